#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>

#include "qot/grid.hpp"
#include "qot/phase_density.hpp"

namespace qot {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Operator / kernel convention (the one place it is written down)
// ----------------------------------------------------------------
// An operator A on L^2([-L,L)^d) is stored as its kernel samples
// K(r,c) ~ A(x_r, x_c). The matrix acting on wavefunction samples is the
// "sample map" M = K * dx^d, i.e.
//
//   (A phi)(x_r)       = sum_c K(r,c) phi(x_c) dx^d
//   kernel of A o B    = K_A * K_B * dx^d
//   Tr A               = sum_r K(r,r) dx^d
//   sing. values of A  = sing. values of (K dx^d)
//
// M is A expressed in the orthonormal basis {dx^{-d/2} delta_j}; operator
// eigenvalues and Schatten norms are those of M. A multiplication operator
// v(x) has kernel diag(v)/dx^d; a Fourier multiplier w(p) has kernel
// F^{-1} diag(w) F / dx^d. Their sample maps carry no dx factor, so mixed
// compositions with kernels are plain matrix products.

/// Density operator rho: Hermitian positive kernel on a spatial grid,
/// normalized so that h^d Tr rho = 1.
struct DensityOperator {
  SpatialGrid grid;
  Mat kernel;
  bool normalized = true;
  /// Cached kernel of the operator square root (filled by sqrt_psd).
  mutable std::shared_ptr<const Mat> sqrt_cache;
};

/// Self-adjoint observable with fast paths for multiplication operators
/// (XDiagonal, symbol over spatial nodes) and Fourier multipliers
/// (PDiagonal, symbol over FFT-ordered momentum bins).
struct ObservableOperator {
  enum class Form { Dense, XDiagonal, PDiagonal };
  SpatialGrid grid;
  Form form = Form::Dense;
  Mat dense;               // kernel samples, Form::Dense only
  Eigen::VectorXd symbol;  // diagonal symbol, XDiagonal/PDiagonal only
  bool self_adjoint = true;
};

// Observable factories.
ObservableOperator position_op(const SpatialGrid& grid, int axis = 0);
ObservableOperator momentum_op(const SpatialGrid& grid, int axis = 0);
/// Multiplication by a function of x (evaluated at spatial nodes).
ObservableOperator x_symbol_op(const SpatialGrid& grid,
                               const std::function<double(const std::array<double, 2>&)>& f);
/// Fourier multiplier by a function of p (evaluated on the operator lattice).
ObservableOperator p_symbol_op(const SpatialGrid& grid,
                               const std::function<double(const std::array<double, 2>&)>& f);
ObservableOperator dense_op(const SpatialGrid& grid, Mat kernel, bool self_adjoint = true);

/// Momentum vector of FFT-ordered spatial linear bin `lin`.
std::array<double, 2> momentum_of_bin(const SpatialGrid& grid, long lin);

// Sample-map application.
Vec obs_apply(const ObservableOperator& A, const Vec& phi);
/// M_A * K (kernel in, kernel out).
Mat obs_apply_left(const ObservableOperator& A, const Mat& K);
/// K * M_A.
Mat obs_apply_right(const Mat& K, const ObservableOperator& A);
/// Kernel samples of the observable.
Mat obs_dense_kernel(const ObservableOperator& A);

// Kernel algebra.
Mat op_compose(const SpatialGrid& g, const Mat& A, const Mat& B);
std::complex<double> op_trace(const SpatialGrid& g, const Mat& A);
/// h^d Tr(A), real part.
double hd_trace(const SpatialGrid& g, const Mat& A);
/// Hilbert-Schmidt inner product h^d Tr(A^* B).
std::complex<double> hd_hs_inner(const SpatialGrid& g, const Mat& A, const Mat& B);

/// Kernel of the commutator [A, K] = M_A K - K M_A.
Mat commutator_kernel(const ObservableOperator& A, const Mat& K);

/// Derivative sample map applied to kernels: returns (d/dx_axis) K along rows.
Mat apply_nabla_rows(const SpatialGrid& g, const Mat& K, int axis);

/// Hermiticity defect max |K - K^*|.
double hermiticity_defect(const Mat& K);

/// Validation per the density-operator contract; throws on violation.
/// `check_spectrum` adds the O(N^3) positivity check.
void validate_density(const DensityOperator& rho, GridTolerances tol = {},
                      bool check_spectrum = false);

/// h^d Tr rho computed from the kernel.
double density_mass(const DensityOperator& rho);

}  // namespace qot
