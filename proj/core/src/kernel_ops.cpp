#include "qot/kernel_ops.hpp"

#include <cmath>

#include "qot/errors.hpp"
#include "qot/fft.hpp"

namespace qot {

namespace {

std::vector<int> spatialDims(const SpatialGrid& g) {
  if (g.dim() == 1) return {g.pointsPerAxis()};
  return {g.pointsPerAxis(), g.pointsPerAxis()};
}

/// Apply a Fourier multiplier (given per FFT-ordered spatial bin) to the row
/// index of a kernel matrix, i.e. compute F^{-1} diag(m) F * K.
Mat applyMultiplierRows(const SpatialGrid& g, const Mat& K, const Vec& m) {
  Mat out = K;
  const long n = g.size();
  if (g.dim() == 1) {
    fft::forward_cols_inplace(out);
    out.array().colwise() *= m.array();
    fft::backward_cols_inplace(out);
    out /= static_cast<double>(n);
  } else {
    const auto dims = spatialDims(g);
    for (long c = 0; c < out.cols(); ++c) {
      Vec col = out.col(c);
      fft::forward_nd_inplace(col.data(), dims);
      col.array() *= m.array();
      fft::backward_nd_inplace(col.data(), dims);
      out.col(c) = col / static_cast<double>(n);
    }
  }
  return out;
}

Vec realToComplex(const Eigen::VectorXd& v) {
  return v.cast<std::complex<double>>();
}

}  // namespace

std::array<double, 2> momentum_of_bin(const SpatialGrid& grid, long lin) {
  const int n = grid.pointsPerAxis();
  if (grid.dim() == 1) return {grid.momentumFftBin(static_cast<int>(lin)), 0.0};
  return {grid.momentumFftBin(static_cast<int>(lin / n)),
          grid.momentumFftBin(static_cast<int>(lin % n))};
}

ObservableOperator position_op(const SpatialGrid& grid, int axis) {
  return x_symbol_op(grid, [axis](const std::array<double, 2>& x) { return x[axis]; });
}

ObservableOperator momentum_op(const SpatialGrid& grid, int axis) {
  return p_symbol_op(grid, [axis](const std::array<double, 2>& p) { return p[axis]; });
}

ObservableOperator x_symbol_op(
    const SpatialGrid& grid,
    const std::function<double(const std::array<double, 2>&)>& f) {
  ObservableOperator A;
  A.grid = grid;
  A.form = ObservableOperator::Form::XDiagonal;
  A.symbol.resize(grid.size());
  for (long i = 0; i < grid.size(); ++i) A.symbol[i] = f(grid.point(i));
  return A;
}

ObservableOperator p_symbol_op(
    const SpatialGrid& grid,
    const std::function<double(const std::array<double, 2>&)>& f) {
  ObservableOperator A;
  A.grid = grid;
  A.form = ObservableOperator::Form::PDiagonal;
  A.symbol.resize(grid.size());
  for (long i = 0; i < grid.size(); ++i) A.symbol[i] = f(momentum_of_bin(grid, i));
  return A;
}

ObservableOperator dense_op(const SpatialGrid& grid, Mat kernel, bool self_adjoint) {
  ObservableOperator A;
  A.grid = grid;
  A.form = ObservableOperator::Form::Dense;
  A.dense = std::move(kernel);
  A.self_adjoint = self_adjoint;
  return A;
}

Vec obs_apply(const ObservableOperator& A, const Vec& phi) {
  switch (A.form) {
    case ObservableOperator::Form::XDiagonal:
      return A.symbol.array().cast<std::complex<double>>() * phi.array();
    case ObservableOperator::Form::PDiagonal: {
      Vec v = phi;
      const auto dims = spatialDims(A.grid);
      fft::forward_nd_inplace(v.data(), dims);
      v.array() *= A.symbol.array().cast<std::complex<double>>();
      fft::backward_nd_inplace(v.data(), dims);
      return v / static_cast<double>(A.grid.size());
    }
    case ObservableOperator::Form::Dense:
      return A.dense * phi * A.grid.dxVol();
  }
  throw Error("obs_apply: bad form");
}

Mat obs_apply_left(const ObservableOperator& A, const Mat& K) {
  switch (A.form) {
    case ObservableOperator::Form::XDiagonal:
      return A.symbol.cast<std::complex<double>>().asDiagonal() * K;
    case ObservableOperator::Form::PDiagonal:
      return applyMultiplierRows(A.grid, K, realToComplex(A.symbol));
    case ObservableOperator::Form::Dense:
      return A.dense * K * A.grid.dxVol();
  }
  throw Error("obs_apply_left: bad form");
}

Mat obs_apply_right(const Mat& K, const ObservableOperator& A) {
  switch (A.form) {
    case ObservableOperator::Form::XDiagonal:
      return K * A.symbol.cast<std::complex<double>>().asDiagonal();
    case ObservableOperator::Form::PDiagonal: {
      if (!A.self_adjoint) throw Error("obs_apply_right: non-self-adjoint multiplier");
      // K M = (M K^*)^* for Hermitian sample map M.
      return applyMultiplierRows(A.grid, K.adjoint(), realToComplex(A.symbol)).adjoint();
    }
    case ObservableOperator::Form::Dense:
      return K * A.dense * A.grid.dxVol();
  }
  throw Error("obs_apply_right: bad form");
}

Mat obs_dense_kernel(const ObservableOperator& A) {
  switch (A.form) {
    case ObservableOperator::Form::XDiagonal:
      return (A.symbol / A.grid.dxVol()).cast<std::complex<double>>().asDiagonal();
    case ObservableOperator::Form::PDiagonal: {
      Mat id = Mat::Identity(A.grid.size(), A.grid.size()) / A.grid.dxVol();
      return obs_apply_left(A, id);
    }
    case ObservableOperator::Form::Dense:
      return A.dense;
  }
  throw Error("obs_dense_kernel: bad form");
}

Mat op_compose(const SpatialGrid& g, const Mat& A, const Mat& B) {
  return A * B * g.dxVol();
}

std::complex<double> op_trace(const SpatialGrid& g, const Mat& A) {
  return A.trace() * g.dxVol();
}

double hd_trace(const SpatialGrid& g, const Mat& A) {
  return g.scale().hd() * op_trace(g, A).real();
}

std::complex<double> hd_hs_inner(const SpatialGrid& g, const Mat& A, const Mat& B) {
  const double w = g.dxVol();
  return g.scale().hd() * (A.adjoint() * B).trace() * w * w;
}

Mat commutator_kernel(const ObservableOperator& A, const Mat& K) {
  if (A.form == ObservableOperator::Form::XDiagonal) {
    Mat out(K.rows(), K.cols());
    for (long c = 0; c < K.cols(); ++c)
      for (long r = 0; r < K.rows(); ++r)
        out(r, c) = (A.symbol[r] - A.symbol[c]) * K(r, c);
    return out;
  }
  return obs_apply_left(A, K) - obs_apply_right(K, A);
}

Mat apply_nabla_rows(const SpatialGrid& g, const Mat& K, int axis) {
  Vec m(g.size());
  const double hbar = g.scale().hbar;
  const int n = g.pointsPerAxis();
  for (long i = 0; i < g.size(); ++i) {
    const auto p = momentum_of_bin(g, i);
    // The unpaired Nyquist bin is zeroed: an odd multiplier must vanish there
    // to keep the derivative real and anti-Hermitian on even grids.
    const int bin = g.dim() == 1 ? static_cast<int>(i)
                                 : static_cast<int>(axis == 0 ? i / n : i % n);
    m[i] = bin == n / 2 ? 0.0 : std::complex<double>(0.0, p[axis] / hbar);
  }
  return applyMultiplierRows(g, K, m);
}

double hermiticity_defect(const Mat& K) {
  return (K - K.adjoint()).cwiseAbs().maxCoeff();
}

double density_mass(const DensityOperator& rho) {
  return hd_trace(rho.grid, rho.kernel);
}

void validate_density(const DensityOperator& rho, GridTolerances tol, bool check_spectrum) {
  if (rho.kernel.rows() != rho.grid.size() || rho.kernel.cols() != rho.grid.size())
    throw GridMismatchError("validate_density: kernel size does not match grid");
  if (hermiticity_defect(rho.kernel) >= 1e-10)
    throw Error("validate_density: kernel is not Hermitian");
  if (rho.normalized) {
    const double mass = density_mass(rho);
    if (std::abs(mass - 1.0) > tol.tol_mass)
      throw Error("validate_density: h^d Tr rho = " + std::to_string(mass));
  }
  if (check_spectrum) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.kernel * rho.grid.dxVol(),
                                          Eigen::EigenvaluesOnly);
    const double mx = es.eigenvalues().cwiseAbs().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-9 * mx)
      throw NotPsdError("validate_density: negative spectrum");
  }
}

}  // namespace qot
