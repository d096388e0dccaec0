#pragma once

#include <utility>
#include <vector>

#include "qot/kernel_ops.hpp"

namespace qot {

/// Semiclassical Schatten norm h^{d/p} (sum sigma_i^p)^{1/p} of the operator
/// with kernel K; p = infinity returns the plain operator norm.
double schatten_norm(const SpatialGrid& g, const Mat& K, double p);
double schatten_norm(const DensityOperator& rho, double p);
double schatten_norm(const ObservableOperator& A, double p);

/// Kernel of the operator square root of a PSD density operator. Eigenvalues
/// in (-1e-6 * ||.||_op, 0) are clipped to zero; anything lower throws NotPsd.
/// The result is cached on the DensityOperator.
Mat sqrt_psd(const DensityOperator& rho);

/// Pure state rho = h^{-d} |psi><psi| from a unit vector (l2(dx) norm 1).
DensityOperator pure_state_density(const SpatialGrid& g, const Vec& psi);

/// Quantum gradients: dx[a] = [nabla_a, K], dv[a] = [x_a/(i hbar), K].
/// They mirror phase-space derivatives of Wigner transforms:
/// f_{dx[a]} = d/dx_a f_K and f_{dv[a]} = d/dxi_a f_K.
struct QuantumGradient {
  std::vector<Mat> dx;
  std::vector<Mat> dv;
};
QuantumGradient quantum_gradient(const SpatialGrid& g, const Mat& K);

/// Sum of squared semiclassical L2 norms over all gradient components.
double grad_l2_sq(const SpatialGrid& g, const QuantumGradient& grad);

/// hbar^2 ||grad_hbar sqrt(rho)||_{L2}^2, the smoothness functional entering
/// every self-distance bound. Equals 2 I_x(rho) + 2 I_p(rho).
double hbar2_grad_sqrt_l2_sq(const DensityOperator& rho);

/// Wigner-Yanase skew information  I_K(rho) = 1/2 ||[K, sqrt(rho)]||_{L2}^2.
double skew_information(const DensityOperator& rho, const ObservableOperator& K);

/// <A>_rho = h^d Tr(sqrt(rho) A sqrt(rho)).
double expectation_sqrt(const DensityOperator& rho, const ObservableOperator& A);

/// Variance <K^2>_rho - <K>_rho^2 with sqrt-ordered expectations.
double variance(const DensityOperator& rho, const ObservableOperator& K);

/// Phase-space translation T_z rho = tau_z rho tau_{-z}. Off-lattice points
/// are snapped to the nearest admissible (dx, pi*hbar/L) lattice point and
/// flagged.
struct TranslateResult {
  DensityOperator rho;
  bool snapped = false;
};
TranslateResult translate(const DensityOperator& rho, const PhasePoint& z);

/// Moment functionals of a density operator:
///   n_n = h^d Tr(sqrt(rho) |x|^n sqrt(rho)),  m_n likewise with |p|^n,
///   z_n = (n_n^{2/n} + m_n^{2/n} + (d+n-2) hbar m0^{2/n})^{1/2},
///   p_n = (3^{n-2} (n_n + m_n + ((d+n-2) hbar)^{n/2} m0))^{1/n}.
struct OperatorMoments {
  double n_n = 0.0;
  double m_n = 0.0;
  double z_n = 0.0;
  double p_n = 0.0;
};
OperatorMoments moments_op(const DensityOperator& rho, double n);

/// Both sides of the trace-convolution identity
///   integral of h^d Tr(rho T_z mu) dz  =  h^d Tr(rho) * h^d Tr(mu),
/// the left side integrated over the given phase grid.
struct TraceConvolution {
  double lhs = 0.0;
  double rhs = 0.0;
};
TraceConvolution trace_convolution_check(const DensityOperator& rho,
                                         const DensityOperator& mu,
                                         const PhaseGrid& phase);

}  // namespace qot
