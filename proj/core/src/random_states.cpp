#include "qot/random_states.hpp"

#include <Eigen/QR>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "qot/errors.hpp"
#include "qot/fft.hpp"

namespace qot {

namespace {

// The random corpus is spanned by low harmonic-oscillator modes of the grid:
// they are exactly orthonormal, Gaussian-confined in x and p, and their count
// is chosen so every mode clears both the box edge and half of the momentum
// band with >= 4 sigma to spare.
struct ModeBasis {
  Mat modes;  // columns, unit l2(dx) norm
};

const ModeBasis& modeBasis(const SpatialGrid& g) {
  static std::mutex mtx;
  static std::map<std::tuple<int, double, double, int>, ModeBasis> cache;
  std::lock_guard<std::mutex> lock(mtx);
  const auto key = std::make_tuple(g.pointsPerAxis(), g.halfWidth(), g.scale().hbar,
                                   g.dim());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const double hbar = g.scale().hbar;
  const double xb = g.halfWidth() / 2.8;
  const double pb = 0.25 * g.momentumBand();
  const double omega = pb / xb;
  const double emax = pb * pb;

  // sample map of p^2 + omega^2 x^2
  Mat H = Mat::Zero(g.size(), g.size());
  {
    const std::vector<int> dims =
        g.dim() == 1 ? std::vector<int>{g.pointsPerAxis()}
                     : std::vector<int>{g.pointsPerAxis(), g.pointsPerAxis()};
    Mat id = Mat::Identity(g.size(), g.size());
    for (long c = 0; c < g.size(); ++c) {
      Vec col = id.col(c);
      fft::forward_nd_inplace(col.data(), dims);
      for (long i = 0; i < g.size(); ++i) {
        const auto p = momentum_of_bin(g, i);
        double p2 = 0.0;
        for (int ax = 0; ax < g.dim(); ++ax) p2 += p[ax] * p[ax];
        col[i] *= p2;
      }
      fft::backward_nd_inplace(col.data(), dims);
      H.col(c) = col / static_cast<double>(g.size());
    }
    for (long i = 0; i < g.size(); ++i) {
      const auto x = g.point(i);
      double x2 = 0.0;
      for (int ax = 0; ax < g.dim(); ++ax) x2 += x[ax] * x[ax];
      H(i, i) += omega * omega * x2;
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  int count = 0;
  while (count < static_cast<int>(g.size()) && es.eigenvalues()[count] <= emax) ++count;
  count = std::max(count, 2);

  ModeBasis basis;
  basis.modes = es.eigenvectors().leftCols(count) / std::sqrt(g.dxVol());
  return cache.emplace(key, std::move(basis)).first->second;
}

}  // namespace

Vec random_wavefunction(const SpatialGrid& g, Rng& rng) {
  const Mat& modes = modeBasis(g).modes;
  Vec c(modes.cols());
  for (long k = 0; k < c.size(); ++k)
    c[k] = std::complex<double>(rng.normal(), rng.normal());
  Vec psi = modes * c;
  const double norm = std::sqrt(psi.squaredNorm() * g.dxVol());
  if (!(norm > 0.0)) throw Error("random_wavefunction: vanishing norm");
  return psi / norm;
}

DensityOperator random_density_operator(const SpatialGrid& g, std::uint64_t seed,
                                        int rank) {
  Rng rng(seed);
  const Mat& modes = modeBasis(g).modes;
  const int nmodes = static_cast<int>(modes.cols());
  rank = std::min(rank, nmodes);

  // Random orthonormal mixing inside the mode span.
  Mat C(nmodes, rank);
  for (int r = 0; r < rank; ++r)
    for (int k = 0; k < nmodes; ++k)
      C(k, r) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Mat> qr(C);
  Mat Q = qr.householderQ() * Mat::Identity(nmodes, rank);
  Mat V = modes * Q;  // unit l2(dx) columns

  Eigen::VectorXd w(rank);
  for (int r = 0; r < rank; ++r) w[r] = rng.uniform(0.2, 1.0);
  w /= w.sum();

  DensityOperator rho;
  rho.grid = g;
  rho.kernel = Mat::Zero(g.size(), g.size());
  for (int r = 0; r < rank; ++r)
    rho.kernel.noalias() += (w[r] / g.scale().hd()) * V.col(r) * V.col(r).adjoint();
  rho.normalized = true;
  return rho;
}

PhaseDensity random_phase_density(const PhaseGrid& phase, std::uint64_t seed, int bumps) {
  Rng rng(seed);
  const SpatialGrid& g = phase.spatial();
  const double hbar = g.scale().hbar;
  const double sref = std::sqrt(hbar);
  const double xmax = 0.25 * g.halfWidth();
  const double ximax = 0.25 * phase.xiBand();

  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(phase.size());
  double total = 0.0;
  for (int b = 0; b < bumps; ++b) {
    PhasePoint c;
    for (int ax = 0; ax < g.dim(); ++ax) {
      c.x[ax] = rng.uniform(-xmax, xmax);
      c.xi[ax] = rng.uniform(-ximax, ximax);
    }
    // Widths capped so bump tails clear both box edges by >= 6 sigma.
    const double s = std::min({rng.uniform(1.2, 2.2) * sref, g.halfWidth() / 9.0,
                               phase.xiBand() / 9.0});
    const double a = rng.uniform(0.2, 1.0);
    total += a;
    for (long i = 0; i < phase.size(); ++i)
      v[i] += a * std::exp(-phase.distSq(i, c) / (2.0 * s * s));
  }
  v /= total;
  v /= v.sum() * phase.cellWeight();
  return PhaseDensity(phase, std::move(v), DensityKind::Probability);
}

}  // namespace qot
