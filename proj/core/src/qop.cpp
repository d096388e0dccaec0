#include "qot/qop.hpp"

#include <cmath>

#include "qot/errors.hpp"
#include "qot/fft.hpp"

namespace qot {

double schatten_norm(const SpatialGrid& g, const Mat& K, double p) {
  if (p < 1.0) throw Error("schatten_norm: p must be >= 1");
  const Mat sample = K * g.dxVol();
  Eigen::VectorXd sv;
  if (hermiticity_defect(K) < 1e-10 * (1.0 + K.cwiseAbs().maxCoeff())) {
    Eigen::SelfAdjointEigenSolver<Mat> es(sample, Eigen::EigenvaluesOnly);
    sv = es.eigenvalues().cwiseAbs();
  } else {
    Eigen::BDCSVD<Mat> svd(sample);
    sv = svd.singularValues();
  }
  if (std::isinf(p)) return sv.maxCoeff();
  double s = 0.0;
  for (long i = 0; i < sv.size(); ++i) s += std::pow(sv[i], p);
  return std::pow(g.scale().hd(), 1.0 / p) * std::pow(s, 1.0 / p);
}

double schatten_norm(const DensityOperator& rho, double p) {
  return schatten_norm(rho.grid, rho.kernel, p);
}

double schatten_norm(const ObservableOperator& A, double p) {
  return schatten_norm(A.grid, obs_dense_kernel(A), p);
}

Mat sqrt_psd(const DensityOperator& rho) {
  if (rho.sqrt_cache) return *rho.sqrt_cache;
  const Mat herm = 0.5 * (rho.kernel + rho.kernel.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm * rho.grid.dxVol());
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -1e-6 * top)
    throw NotPsdError("sqrt_psd: eigenvalue " + std::to_string(ev.minCoeff()) +
                      " below -1e-6 * ||rho||");
  // Eigenvalues below 1e-12 * ||rho|| are numerical zeros; rooting them would
  // amplify solver noise to sqrt(eps) in the result.
  Eigen::VectorXd root(ev.size());
  for (long i = 0; i < ev.size(); ++i)
    root[i] = ev[i] > 1e-12 * top ? std::sqrt(ev[i]) : 0.0;
  Mat S = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  S /= rho.grid.dxVol();
  rho.sqrt_cache = std::make_shared<const Mat>(std::move(S));
  return *rho.sqrt_cache;
}

DensityOperator pure_state_density(const SpatialGrid& g, const Vec& psi) {
  DensityOperator rho;
  rho.grid = g;
  rho.kernel = (psi * psi.adjoint()) / g.scale().hd();
  rho.normalized = true;
  // sqrt of a rank-one projector scaled by h^{-d} is h^{-d/2} |psi><psi|.
  rho.sqrt_cache =
      std::make_shared<const Mat>((psi * psi.adjoint()) / std::sqrt(g.scale().hd()));
  return rho;
}

QuantumGradient quantum_gradient(const SpatialGrid& g, const Mat& K) {
  QuantumGradient grad;
  const double hbar = g.scale().hbar;
  for (int a = 0; a < g.dim(); ++a) {
    // [D, K] = D K + (D K^*)^* since the derivative sample map is
    // anti-Hermitian.
    Mat dk = apply_nabla_rows(g, K, a);
    Mat kd = apply_nabla_rows(g, K.adjoint(), a).adjoint();
    grad.dx.push_back(dk + kd);

    Mat dv(K.rows(), K.cols());
    const std::complex<double> ihbar_inv(0.0, -1.0 / hbar);  // 1/(i hbar)
    for (long c = 0; c < K.cols(); ++c) {
      const double xc = g.point(c)[a];
      for (long r = 0; r < K.rows(); ++r)
        dv(r, c) = ihbar_inv * (g.point(r)[a] - xc) * K(r, c);
    }
    grad.dv.push_back(std::move(dv));
  }
  return grad;
}

double grad_l2_sq(const SpatialGrid& g, const QuantumGradient& grad) {
  double s = 0.0;
  for (const Mat& m : grad.dx) s += hd_hs_inner(g, m, m).real();
  for (const Mat& m : grad.dv) s += hd_hs_inner(g, m, m).real();
  return s;
}

double hbar2_grad_sqrt_l2_sq(const DensityOperator& rho) {
  const Mat S = sqrt_psd(rho);
  const QuantumGradient grad = quantum_gradient(rho.grid, S);
  return rho.grid.scale().hbar * rho.grid.scale().hbar * grad_l2_sq(rho.grid, grad);
}

double skew_information(const DensityOperator& rho, const ObservableOperator& K) {
  const Mat S = sqrt_psd(rho);
  const Mat C = commutator_kernel(K, S);
  return 0.5 * hd_hs_inner(rho.grid, C, C).real();
}

double expectation_sqrt(const DensityOperator& rho, const ObservableOperator& A) {
  const Mat S = sqrt_psd(rho);
  const Mat AS = obs_apply_left(A, S);
  return hd_trace(rho.grid, op_compose(rho.grid, S, AS));
}

double variance(const DensityOperator& rho, const ObservableOperator& K) {
  const Mat S = sqrt_psd(rho);
  const Mat KS = obs_apply_left(K, S);
  const Mat KKS = obs_apply_left(K, KS);
  const double mean = hd_trace(rho.grid, op_compose(rho.grid, S, KS));
  const double sq = hd_trace(rho.grid, op_compose(rho.grid, S, KKS));
  return sq - mean * mean;
}

namespace {

struct LatticeShift {
  std::array<int, 2> sx{0, 0};   // x shift in units of dx
  std::array<int, 2> sxi{0, 0};  // xi shift in units of pi*hbar/L
  bool snapped = false;
};

LatticeShift snapToLattice(const SpatialGrid& g, const PhasePoint& z) {
  LatticeShift s;
  const double dxi = g.dualSpacing();
  for (int a = 0; a < g.dim(); ++a) {
    const double jx = z.x[a] / g.dx();
    const double jxi = z.xi[a] / dxi;
    s.sx[a] = static_cast<int>(std::lround(jx));
    s.sxi[a] = static_cast<int>(std::lround(jxi));
    if (std::abs(jx - s.sx[a]) > 1e-9 || std::abs(jxi - s.sxi[a]) > 1e-9)
      s.snapped = true;
  }
  return s;
}

Mat translateKernel(const SpatialGrid& g, const Mat& K, const LatticeShift& s) {
  const int n = g.pointsPerAxis();
  const double hbar = g.scale().hbar;
  const double dxi = g.dualSpacing();
  Mat out(K.rows(), K.cols());
  for (long c = 0; c < K.cols(); ++c) {
    const auto jc = g.decode(c);
    std::array<int, 2> jcs{};
    double phase_c = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      jcs[a] = ((jc[a] - s.sx[a]) % n + n) % n;
      phase_c += s.sxi[a] * dxi * g.node(jc[a]);
    }
    const long cs = g.encode(jcs);
    for (long r = 0; r < K.rows(); ++r) {
      const auto jr = g.decode(r);
      std::array<int, 2> jrs{};
      double phase_r = 0.0;
      for (int a = 0; a < g.dim(); ++a) {
        jrs[a] = ((jr[a] - s.sx[a]) % n + n) % n;
        phase_r += s.sxi[a] * dxi * g.node(jr[a]);
      }
      const long rs = g.encode(jrs);
      out(r, c) = std::polar(1.0, (phase_r - phase_c) / hbar) * K(rs, cs);
    }
  }
  return out;
}

}  // namespace

TranslateResult translate(const DensityOperator& rho, const PhasePoint& z) {
  const LatticeShift s = snapToLattice(rho.grid, z);
  TranslateResult res;
  res.snapped = s.snapped;
  res.rho.grid = rho.grid;
  res.rho.normalized = rho.normalized;
  res.rho.kernel = translateKernel(rho.grid, rho.kernel, s);
  if (rho.sqrt_cache)
    res.rho.sqrt_cache = std::make_shared<const Mat>(
        translateKernel(rho.grid, *rho.sqrt_cache, s));
  return res;
}

OperatorMoments moments_op(const DensityOperator& rho, double n) {
  if (n < 2.0) throw Error("moments_op: n must be >= 2");
  const SpatialGrid& g = rho.grid;
  const int d = g.dim();
  const double hbar = g.scale().hbar;
  auto absPow = [n, d](const std::array<double, 2>& v) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += v[a] * v[a];
    return std::pow(s, 0.5 * n);
  };
  OperatorMoments out;
  out.n_n = expectation_sqrt(rho, x_symbol_op(g, absPow));
  out.m_n = expectation_sqrt(rho, p_symbol_op(g, absPow));
  const double m0 = density_mass(rho);
  const double heat = (d + n - 2.0) * hbar;
  out.z_n = std::sqrt(std::pow(out.n_n, 2.0 / n) + std::pow(out.m_n, 2.0 / n) +
                      heat * std::pow(m0, 2.0 / n));
  out.p_n = std::pow(
      std::pow(3.0, n - 2.0) * (out.n_n + out.m_n + std::pow(heat, 0.5 * n) * m0),
      1.0 / n);
  return out;
}

TraceConvolution trace_convolution_check(const DensityOperator& rho,
                                         const DensityOperator& mu,
                                         const PhaseGrid& phase) {
  if (rho.grid != mu.grid || phase.spatial() != rho.grid)
    throw GridMismatchError("trace_convolution_check: grids differ");
  if (rho.grid.dim() != 1)
    throw Error("trace_convolution_check: implemented for d=1");

  const SpatialGrid& g = rho.grid;
  const int n = g.pointsPerAxis();
  const int m = phase.xiPerAxis();  // 2N
  const double dx = g.dx();
  const double w = phase.cellWeight();
  const double hd = g.scale().hd();

  // h^d Tr(rho T_z mu) as a function of z = (s*dx, xi_k): group the double sum
  // over kernel entries by the literal index difference, then one length-2N
  // DFT per spatial shift s.
  double lhs = 0.0;
  Eigen::VectorXcd arr(m);
  for (int s = 0; s < n; ++s) {
    arr.setZero();
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const int delta = c - r;  // in (-N, N)
        const int slot = (delta % m + m) % m;
        const int cs = ((c - s) % n + n) % n;
        const int rs = ((r - s) % n + n) % n;
        arr[slot] += rho.kernel(r, c) * mu.kernel(cs, rs);
      }
    }
    fft::backward_inplace(arr);  // sum arr[m'] e^{+2 pi i k' m'/(2N)}
    for (int k = 0; k < m; ++k) {
      const int kp = ((k - n) % m + m) % m;
      lhs += hd * dx * dx * arr[kp].real() * w;
    }
  }
  TraceConvolution out;
  out.lhs = lhs;
  out.rhs = density_mass(rho) * density_mass(mu);
  return out;
}

}  // namespace qot
