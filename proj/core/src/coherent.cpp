#include "qot/coherent.hpp"

#include <cmath>

#include "qot/errors.hpp"
#include "qot/qop.hpp"

namespace qot {

namespace {

/// One spatial axis of psi_z with torus images, unnormalized.
void axisVector(const SpatialGrid& g, double x0, double xi0, Vec& out) {
  const int n = g.pointsPerAxis();
  const double hbar = g.scale().hbar;
  const double period = 2.0 * g.halfWidth();
  const double amp = std::pow(std::numbers::pi * hbar, -0.25);
  out.resize(n);
  for (int j = 0; j < n; ++j) {
    std::complex<double> v(0.0, 0.0);
    for (int im = -1; im <= 1; ++im) {
      const double y = g.node(j) + im * period;
      const double u = y - x0;
      v += amp * std::exp(-u * u / (2.0 * hbar)) *
           std::polar(1.0, xi0 * (y - 0.5 * x0) / hbar);
    }
    out[j] = v;
  }
}

}  // namespace

Vec coherent_vector(const SpatialGrid& g, const PhasePoint& z) {
  Vec psi;
  if (g.dim() == 1) {
    axisVector(g, z.x[0], z.xi[0], psi);
  } else {
    Vec a, b;
    axisVector(g, z.x[0], z.xi[0], a);
    axisVector(g, z.x[1], z.xi[1], b);
    psi.resize(g.size());
    for (int j1 = 0; j1 < g.pointsPerAxis(); ++j1)
      for (int j2 = 0; j2 < g.pointsPerAxis(); ++j2)
        psi[g.encode({j1, j2})] = a[j1] * b[j2];
  }
  const double norm = std::sqrt(psi.squaredNorm() * g.dxVol());
  if (!(norm > 0.0)) throw Error("coherent_vector: vanishing norm");
  return psi / norm;
}

CoherentState make_coherent(const SpatialGrid& g, const PhasePoint& z) {
  return {g, z, coherent_vector(g, z)};
}

DensityOperator coherent_density(const SpatialGrid& g, const PhasePoint& z) {
  return pure_state_density(g, coherent_vector(g, z));
}

CoherentBatch::CoherentBatch(PhaseGrid phase) : phase_(std::move(phase)) {
  const SpatialGrid& g = phase_.spatial();
  const int n = g.pointsPerAxis();
  const int m = phase_.xiPerAxis();
  const double hbar = g.scale().hbar;
  const double period = 2.0 * g.halfWidth();
  const double amp = std::pow(std::numbers::pi * hbar, -0.25);

  env_.resize(n);
  inv_norm_.resize(n);
  for (int j0 = 0; j0 < n; ++j0) {
    Eigen::VectorXd e(n);
    const double x0 = g.node(j0);
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int im = -1; im <= 1; ++im) {
        const double u = g.node(j) + im * period - x0;
        v += amp * std::exp(-u * u / (2.0 * hbar));
      }
      e[j] = v;
    }
    inv_norm_[j0] = 1.0 / std::sqrt(e.squaredNorm() * g.dx());
    env_[j0] = std::move(e);
  }
  phase_vec_.resize(m);
  for (int k = 0; k < m; ++k) {
    Vec p(n);
    const double xi = phase_.xiNode(k);
    for (int j = 0; j < n; ++j) p[j] = std::polar(1.0, xi * g.node(j) / hbar);
    phase_vec_[k] = std::move(p);
  }
}

void CoherentBatch::axisColumn(int, int jx, int kxi, Vec& out) const {
  const SpatialGrid& g = phase_.spatial();
  const double hbar = g.scale().hbar;
  const double x0 = g.node(jx);
  const double xi0 = phase_.xiNode(kxi);
  const std::complex<double> scalar =
      inv_norm_[jx] * std::polar(1.0, -0.5 * xi0 * x0 / hbar);
  out = scalar * (env_[jx].cast<std::complex<double>>().array() *
                  phase_vec_[kxi].array()).matrix();
}

Vec CoherentBatch::column(long z_lin) const {
  const SpatialGrid& g = phase_.spatial();
  const long x_lin = z_lin / phase_.xiSize();
  const long xi_lin = z_lin % phase_.xiSize();
  const auto jx = g.decode(x_lin);
  const auto kxi = phase_.decodeXi(xi_lin);
  Vec a;
  axisColumn(0, jx[0], kxi[0], a);
  if (g.dim() == 1) return a;
  Vec b;
  axisColumn(1, jx[1], kxi[1], b);
  Vec out(g.size());
  for (int j1 = 0; j1 < g.pointsPerAxis(); ++j1)
    for (int j2 = 0; j2 < g.pointsPerAxis(); ++j2)
      out[g.encode({j1, j2})] = a[j1] * b[j2];
  return out;
}

void CoherentBatch::fillColumns(long z_begin, long z_end, Mat& out) const {
  for (long z = z_begin; z < z_end; ++z) out.col(z - z_begin) = column(z);
}

}  // namespace qot
