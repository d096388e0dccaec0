#pragma once

#include "qot/coherent.hpp"
#include "qot/kernel_ops.hpp"
#include "qot/phase_density.hpp"

namespace qot {

// Discrete Wigner transform
// -------------------------
// f_K(x_j, xi_k) = dx^d sum_m K2(x_j + m dx/2, x_j - m dx/2) e^{-i m dx xi_k / hbar}
// where K2 is the Fourier interpolation of the kernel onto the half-step grid
// and xi_k runs over the refined lattice (spacing pi hbar/(2L), 2N points per
// axis). On states whose momentum content stays inside half of the band
// (|p| <= pi hbar N/(4L), checked by momentum_tail_fraction) the map is
// unitary: mass, Plancherel and the Weyl round-trip hold to machine precision.

/// Wigner transform of a density operator (signed phase density).
PhaseDensity wigner(const DensityOperator& rho);
/// Wigner transform of an arbitrary Hermitian kernel.
PhaseDensity wigner_kernel(const SpatialGrid& g, const Mat& K);

/// Husimi transform g_h * f_rho; probability density.
PhaseDensity husimi(const DensityOperator& rho, GridTolerances tol = {});
/// Pointwise dual form h^{-d} <psi_z | rho psi_z>; same function as husimi
/// up to grid error, computed without the Wigner transform.
PhaseDensity husimi_dual(const DensityOperator& rho, GridTolerances tol = {});

/// Weyl quantization: the operator whose Wigner transform is f.
ObservableOperator weyl_quantize(const PhaseDensity& f);
Mat weyl_quantize_kernel(const PhaseDensity& f);

/// Wick/Toeplitz quantization h^{-d} sum_z f(z) |psi_z><psi_z| w of a
/// probability density; positive, h^d Tr = 1 up to the partition defect.
DensityOperator toeplitz_quantize(const PhaseDensity& f, GridTolerances tol = {});
/// Toeplitz operator of an arbitrary bounded real symbol.
ObservableOperator toeplitz_op(const PhaseDensity& symbol);

/// Operator-norm defect || h^{-d} sum_z T_z P_{g_h} w  -  Id ||.
double partition_unity_defect(const PhaseGrid& phase);

/// Fraction of momentum occupation outside half of the band (per axis).
double momentum_tail_fraction(const DensityOperator& rho);
/// Throws ResolutionError when momentum_tail_fraction exceeds tol.
void require_band_limited(const DensityOperator& rho, double tol = 1e-6);

}  // namespace qot
