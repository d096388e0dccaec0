#include "qot/transforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "qot/errors.hpp"
#include "qot/fft.hpp"

namespace qot {

namespace {

/// Zero-pad an FFT-ordered spectrum from length n to 2n columnwise, splitting
/// the self-conjugate Nyquist bin across +-n/2.
Mat padSpectrumCols(const Mat& X) {
  const long n = X.rows();
  Mat out = Mat::Zero(2 * n, X.cols());
  out.topRows(n / 2) = X.topRows(n / 2);
  out.bottomRows(n / 2 - 1) = X.bottomRows(n / 2 - 1);
  out.row(n / 2) = 0.5 * X.row(n / 2);
  out.row(2 * n - n / 2) = 0.5 * X.row(n / 2);
  return out;
}

/// Fourier interpolation of a kernel onto the half-step grid, N^2 -> (2N)^2.
Mat fineKernel(const Mat& K) {
  Mat X = K;
  fft::forward_cols_inplace(X);
  Mat X2 = padSpectrumCols(X);
  fft::backward_cols_inplace(X2);
  X2 /= static_cast<double>(K.rows());

  Mat Y = X2.transpose();
  fft::forward_cols_inplace(Y);
  Mat Y2 = padSpectrumCols(Y);
  fft::backward_cols_inplace(Y2);
  Y2 /= static_cast<double>(K.cols());
  return Y2.transpose();
}

/// One-axis Wigner pipeline, complex valued. Kernel (n x n) to phase samples
/// (n x 2n); row = x node, column = xi node on the refined lattice. The whole
/// pipeline is C-linear; Hermitian input gives real output.
///
/// The y sum runs over the unwrapped anti-diagonal: offsets that would wrap
/// around the torus are dropped. Wrapped entries pair +L with -L tails of the
/// state and would plant a sign-flipped ghost of the center at the box edge;
/// for states confined away from the boundary the dropped entries vanish.
Mat wigner1dComplex(double dx, const Mat& K) {
  const int n = static_cast<int>(K.rows());
  const int m = 2 * n;
  const Mat K2 = fineKernel(K);
  Mat out(n, m);
  Vec a(m);
  for (int j = 0; j < n; ++j) {
    a.setZero();
    for (int mm = -(n - 1); mm <= n - 1; ++mm) {
      const int r = 2 * j + mm;
      const int c = 2 * j - mm;
      if (r < 0 || r >= m || c < 0 || c >= m) continue;
      a[(mm + m) % m] = K2(r, c);
    }
    fft::forward_inplace(a);
    for (int k = 0; k < m; ++k) out(j, k) = dx * a[((k - n) % m + m) % m];
  }
  return out;
}

/// Interpolate phase samples in x (n -> 2n rows) by zero padding.
Mat xInterp(const Mat& f) {
  Mat X = f;
  fft::forward_cols_inplace(X);
  Mat X2 = padSpectrumCols(X);
  fft::backward_cols_inplace(X2);
  X2 /= static_cast<double>(f.rows());
  return X2;
}

/// One-axis Weyl pipeline, complex valued: phase samples (n x 2n) to kernel.
Mat weyl1dComplex(double dx, const Mat& f) {
  const int n = static_cast<int>(f.rows());
  const int m = 2 * n;
  const Mat F2 = xInterp(f);

  // b^(alpha)_mm = (1/(2n dx)) sum_k F2(u_alpha, xi_k) e^{+2 pi i mm (k-n)/(2n)}
  Mat B(m, m);
  Vec arr(m);
  for (int alpha = 0; alpha < m; ++alpha) {
    for (int k = 0; k < m; ++k) arr[((k - n) % m + m) % m] = F2(alpha, k);
    fft::backward_inplace(arr);
    B.row(alpha) = arr.transpose() / (m * dx);
  }
  Mat K(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) K(r, c) = B(r + c, ((r - c) % m + m) % m);
  return K;
}

/// Dense one-axis maps for the tensor-grid (d=2) transforms, cached per grid.
struct AxisMaps {
  Mat fwd;  // (n*2n) x (n*n): row j*2n+k, column r*n+c
  Mat inv;  // (n*n) x (n*2n)
};

const AxisMaps& axisMaps(const SpatialGrid& g) {
  static std::mutex mtx;
  static std::map<std::tuple<int, double, double>, AxisMaps> cache;
  std::lock_guard<std::mutex> lock(mtx);
  const auto key = std::make_tuple(g.pointsPerAxis(), g.halfWidth(), g.scale().hbar);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const int n = g.pointsPerAxis();
  const int m = 2 * n;
  const double dx = g.dx();
  AxisMaps maps;
  maps.fwd.resize(static_cast<long>(n) * m, static_cast<long>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Mat E = Mat::Zero(n, n);
      E(r, c) = 1.0;
      const Mat f = wigner1dComplex(dx, E);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < m; ++k)
          maps.fwd(static_cast<long>(j) * m + k, static_cast<long>(r) * n + c) = f(j, k);
    }
  maps.inv.resize(static_cast<long>(n) * n, static_cast<long>(n) * m);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < m; ++k) {
      Mat F = Mat::Zero(n, m);
      F(j, k) = 1.0;
      const Mat K = weyl1dComplex(dx, F);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          maps.inv(static_cast<long>(r) * n + c, static_cast<long>(j) * m + k) = K(r, c);
    }
  return cache.emplace(key, std::move(maps)).first->second;
}

/// d=2 Wigner by applying the one-axis map to each index pair.
Eigen::ArrayXd wigner2d(const PhaseGrid& phase, const Mat& K) {
  const SpatialGrid& g = phase.spatial();
  const int n = g.pointsPerAxis();
  const int m = 2 * n;
  const Mat& W = axisMaps(g).fwd;

  // Kp[(r1,c1),(r2,c2)] then T = W * Kp, F = T * W^T.
  Mat Kp(static_cast<long>(n) * n, static_cast<long>(n) * n);
  for (int r1 = 0; r1 < n; ++r1)
    for (int c1 = 0; c1 < n; ++c1)
      for (int r2 = 0; r2 < n; ++r2)
        for (int c2 = 0; c2 < n; ++c2)
          Kp(static_cast<long>(r1) * n + c1, static_cast<long>(r2) * n + c2) =
              K(static_cast<long>(r1) * n + r2, static_cast<long>(c1) * n + c2);
  const Mat T = W * Kp;
  const Mat F = T * W.transpose();

  Eigen::ArrayXd out(phase.size());
  const long xiSz = phase.xiSize();
  for (int j1 = 0; j1 < n; ++j1)
    for (int k1 = 0; k1 < m; ++k1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int k2 = 0; k2 < m; ++k2) {
          const long xlin = static_cast<long>(j1) * n + j2;
          const long xilin = static_cast<long>(k1) * m + k2;
          out[xlin * xiSz + xilin] =
              F(static_cast<long>(j1) * m + k1, static_cast<long>(j2) * m + k2).real();
        }
  return out;
}

Mat weyl2d(const PhaseGrid& phase, const Eigen::ArrayXd& values) {
  const SpatialGrid& g = phase.spatial();
  const int n = g.pointsPerAxis();
  const int m = 2 * n;
  const Mat& Vinv = axisMaps(g).inv;

  Mat F(static_cast<long>(n) * m, static_cast<long>(n) * m);
  const long xiSz = phase.xiSize();
  for (int j1 = 0; j1 < n; ++j1)
    for (int k1 = 0; k1 < m; ++k1)
      for (int j2 = 0; j2 < n; ++j2)
        for (int k2 = 0; k2 < m; ++k2) {
          const long xlin = static_cast<long>(j1) * n + j2;
          const long xilin = static_cast<long>(k1) * m + k2;
          F(static_cast<long>(j1) * m + k1, static_cast<long>(j2) * m + k2) =
              values[xlin * xiSz + xilin];
        }
  const Mat T = Vinv * F;          // (r1 c1) x (j2 k2)
  const Mat Kp = T * Vinv.transpose();  // (r1 c1) x (r2 c2)

  Mat K(static_cast<long>(n) * n, static_cast<long>(n) * n);
  for (int r1 = 0; r1 < n; ++r1)
    for (int c1 = 0; c1 < n; ++c1)
      for (int r2 = 0; r2 < n; ++r2)
        for (int c2 = 0; c2 < n; ++c2)
          K(static_cast<long>(r1) * n + r2, static_cast<long>(c1) * n + c2) =
              Kp(static_cast<long>(r1) * n + c1, static_cast<long>(r2) * n + c2);
  return K;
}

long chunkColumns(long n_rows) {
  return std::max<long>(64, (1L << 22) / std::max<long>(n_rows, 1));
}

}  // namespace

PhaseDensity wigner_kernel(const SpatialGrid& g, const Mat& K) {
  PhaseGrid phase(g);
  if (g.dim() == 1) {
    const Mat f = wigner1dComplex(g.dx(), K);
    Eigen::ArrayXd out(phase.size());
    const long m = phase.xiSize();
    for (long j = 0; j < g.size(); ++j)
      for (long k = 0; k < m; ++k) out[j * m + k] = f(j, k).real();
    return PhaseDensity(phase, std::move(out), DensityKind::Signed);
  }
  return PhaseDensity(phase, wigner2d(phase, K), DensityKind::Signed);
}

PhaseDensity wigner(const DensityOperator& rho) {
  return wigner_kernel(rho.grid, rho.kernel);
}

PhaseDensity husimi(const DensityOperator& rho, GridTolerances tol) {
  const PhaseDensity f = wigner(rho);
  const PhaseDensity gh = gaussian_gh(f.grid());
  PhaseDensity smooth = convolve(f, gh);
  return PhaseDensity(smooth.grid(), smooth.values(), DensityKind::Probability, tol);
}

PhaseDensity husimi_dual(const DensityOperator& rho, GridTolerances tol) {
  PhaseGrid phase(rho.grid);
  CoherentBatch batch(phase);
  const double w = rho.grid.dxVol();
  Eigen::ArrayXd out(phase.size());
  const long cols = chunkColumns(rho.grid.size());
  Mat buf(rho.grid.size(), cols);
  for (long z0 = 0; z0 < phase.size(); z0 += cols) {
    const long z1 = std::min(z0 + cols, phase.size());
    Mat chunk = buf.leftCols(z1 - z0);
    batch.fillColumns(z0, z1, chunk);
    // <psi_z | rho psi_z> with the dx-weighted inner product; this is the
    // Husimi value directly under the h^d Tr = 1 normalization.
    const Mat Kpsi = rho.kernel * chunk;
    for (long i = 0; i < z1 - z0; ++i)
      out[z0 + i] = (chunk.col(i).dot(Kpsi.col(i)) * w * w).real();
  }
  return PhaseDensity(phase, std::move(out), DensityKind::Probability, tol);
}

Mat weyl_quantize_kernel(const PhaseDensity& f) {
  const SpatialGrid& g = f.grid().spatial();
  if (g.dim() == 1) {
    const long m = f.grid().xiSize();
    Mat F(g.size(), m);
    for (long j = 0; j < g.size(); ++j)
      for (long k = 0; k < m; ++k) F(j, k) = f.values()[j * m + k];
    return weyl1dComplex(g.dx(), F);
  }
  return weyl2d(f.grid(), f.values());
}

ObservableOperator weyl_quantize(const PhaseDensity& f) {
  return dense_op(f.grid().spatial(), weyl_quantize_kernel(f));
}

namespace {

/// Accumulate h^{-d} sum_z s(z) |psi_z><psi_z| w over the phase grid.
Mat coherentQuadrature(const PhaseGrid& phase, const Eigen::ArrayXd& s) {
  const SpatialGrid& g = phase.spatial();
  CoherentBatch batch(phase);
  const double scale = phase.cellWeight() / g.scale().hd();
  Mat acc = Mat::Zero(g.size(), g.size());
  const long cols = chunkColumns(g.size());
  Mat buf(g.size(), cols);
  for (long z0 = 0; z0 < phase.size(); z0 += cols) {
    const long z1 = std::min(z0 + cols, phase.size());
    Mat chunk = buf.leftCols(z1 - z0);
    batch.fillColumns(z0, z1, chunk);
    Mat weighted = chunk;
    for (long i = 0; i < z1 - z0; ++i) weighted.col(i) *= s[z0 + i] * scale;
    acc.noalias() += weighted * chunk.adjoint();
  }
  return 0.5 * (acc + acc.adjoint());
}

}  // namespace

DensityOperator toeplitz_quantize(const PhaseDensity& f, GridTolerances tol) {
  if (f.kind() != DensityKind::Probability)
    throw NegativeSymbolError("toeplitz_quantize: symbol must be a probability density");
  DensityOperator rho;
  rho.grid = f.grid().spatial();
  rho.kernel = coherentQuadrature(f.grid(), f.values());
  rho.normalized = true;
  validate_density(rho, tol);
  return rho;
}

ObservableOperator toeplitz_op(const PhaseDensity& symbol) {
  return dense_op(symbol.grid().spatial(),
                  coherentQuadrature(symbol.grid(), symbol.values()));
}

double partition_unity_defect(const PhaseGrid& phase) {
  const SpatialGrid& g = phase.spatial();
  const Mat P = coherentQuadrature(phase, Eigen::ArrayXd::Ones(phase.size()));
  const Mat M = P * g.dxVol() - Mat::Identity(g.size(), g.size());
  Eigen::SelfAdjointEigenSolver<Mat> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double momentum_tail_fraction(const DensityOperator& rho) {
  const SpatialGrid& g = rho.grid;
  // Momentum occupations: diagonal of the kernel conjugated by the DFT.
  Mat T = rho.kernel;
  if (g.dim() == 1) {
    fft::forward_cols_inplace(T);
    Mat Tt = T.transpose();
    fft::forward_cols_inplace(Tt);  // conjugate transform on the column index
    T = Tt.transpose();
  } else {
    const std::vector<int> dims{g.pointsPerAxis(), g.pointsPerAxis()};
    for (long c = 0; c < T.cols(); ++c) {
      Vec col = T.col(c);
      fft::forward_nd_inplace(col.data(), dims);
      T.col(c) = col;
    }
    Mat Tt = T.transpose();
    for (long c = 0; c < Tt.cols(); ++c) {
      Vec col = Tt.col(c);
      fft::forward_nd_inplace(col.data(), dims);
      Tt.col(c) = col;
    }
    T = Tt.transpose();
  }
  // After F K F^T the (a, conj a) entry carries the occupation of bin a; the
  // conjugate transform on columns shows up as the reversed index.
  const double band = 0.5 * g.momentumBand();
  double tail = 0.0, total = 0.0;
  for (long a = 0; a < g.size(); ++a) {
    // occupation of bin a = (F K F^dagger)_{aa}; column transform above used
    // e^{-i} on the column index, so conjugate by reading the reversed bin.
    long arev = 0;
    if (g.dim() == 1) {
      arev = (g.pointsPerAxis() - a) % g.pointsPerAxis();
    } else {
      const int n = g.pointsPerAxis();
      const long a1 = a / n, a2 = a % n;
      arev = ((n - a1) % n) * n + ((n - a2) % n);
    }
    const double occ = std::abs(T(a, arev).real());
    total += occ;
    const auto p = momentum_of_bin(g, a);
    bool out = false;
    for (int ax = 0; ax < g.dim(); ++ax)
      if (std::abs(p[ax]) > band) out = true;
    if (out) tail += occ;
  }
  return total > 0.0 ? tail / total : 0.0;
}

void require_band_limited(const DensityOperator& rho, double tol) {
  const double t = momentum_tail_fraction(rho);
  if (t > tol)
    throw ResolutionError("state momentum tail " + std::to_string(t) +
                          " exceeds the half-band budget " + std::to_string(tol));
}

}  // namespace qot
