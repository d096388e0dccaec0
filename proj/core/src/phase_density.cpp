#include "qot/phase_density.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <vector>

#include "qot/fft.hpp"

namespace qot {

PhaseDensity::PhaseDensity(PhaseGrid grid, Eigen::ArrayXd values, DensityKind kind,
                           GridTolerances tol)
    : grid_(std::move(grid)), values_(std::move(values)), kind_(kind) {
  if (values_.size() != grid_.size())
    throw GridMismatchError("PhaseDensity: value array does not match grid size");
  if (kind_ == DensityKind::Probability) {
    const double mn = values_.minCoeff();
    if (mn < -tol.tol_neg)
      throw Error("PhaseDensity: probability density has negative values (min " +
                  std::to_string(mn) + ")");
    const double mass = quadrature();
    if (std::abs(mass - 1.0) > tol.tol_mass)
      throw Error("PhaseDensity: probability density has mass " + std::to_string(mass));
  }
}

PhaseDensity gaussian_gh(const PhaseGrid& grid, const PhasePoint& center) {
  const auto& sg = grid.spatial();
  const double hbar = grid.scale().hbar;
  const double sigma = std::sqrt(hbar / 2.0);  // per-axis std dev of g_h
  const double rad = 6.0 * std::sqrt(hbar);

  for (int a = 0; a < grid.dim(); ++a) {
    if (sg.halfWidth() < rad + std::abs(center.x[a]))
      throw TailTruncationError("gaussian_gh: grid half-width too small for center");
    if (grid.xiBand() < rad + std::abs(center.xi[a]))
      throw TailTruncationError("gaussian_gh: momentum band too small for center");
  }
  // Per-axis tail mass outside the box, each axis a N(c, ħ/2) marginal.
  double outside = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    outside += std::erfc((sg.halfWidth() - std::abs(center.x[a])) / (std::sqrt(2.0) * sigma));
    outside += std::erfc((grid.xiBand() - std::abs(center.xi[a])) / (std::sqrt(2.0) * sigma));
  }
  if (outside > 1e-8)
    throw TailTruncationError("gaussian_gh: mass outside grid exceeds 1e-8");

  const double amp = std::pow(2.0 / grid.scale().h(), grid.dim());
  Eigen::ArrayXd v(grid.size());
  for (long i = 0; i < grid.size(); ++i)
    v[i] = amp * std::exp(-grid.distSq(i, center) / hbar);
  return PhaseDensity(grid, std::move(v), DensityKind::Probability);
}

double moment(const PhaseDensity& f, double n) {
  if (f.kind() != DensityKind::Probability)
    throw Error("moment: requires a probability density");
  if (n < 0.0) throw Error("moment: order must be nonnegative");
  if (n == 0.0) return 1.0;
  const auto& g = f.grid();
  const PhasePoint origin{};
  double s = 0.0;
  for (long i = 0; i < g.size(); ++i)
    s += std::pow(g.distSq(i, origin), 0.5 * n) * f.values()[i];
  s *= g.cellWeight();
  return std::pow(std::max(s, 0.0), 1.0 / n);
}

PhasePoint first_moment(const PhaseDensity& f) {
  const auto& g = f.grid();
  PhasePoint m;
  for (long i = 0; i < g.size(); ++i) {
    const PhasePoint z = g.point(i);
    const double fv = f.values()[i] * g.cellWeight();
    for (int a = 0; a < g.dim(); ++a) {
      m.x[a] += z.x[a] * fv;
      m.xi[a] += z.xi[a] * fv;
    }
  }
  return m;
}

namespace {

std::vector<int> phaseDims(const PhaseGrid& g) {
  const int n = g.spatial().pointsPerAxis();
  const int m = g.xiPerAxis();
  if (g.dim() == 1) return {n, m};
  return {n, n, m, m};
}

/// Roll every axis by half its length so the z = 0 node lands on index 0
/// (the x origin sits at j = N/2, the xi origin at k = M/2).
Eigen::ArrayXd rollOriginToFront(const std::vector<int>& dims, const Eigen::ArrayXd& v) {
  Eigen::ArrayXd out(v.size());
  const int rank = static_cast<int>(dims.size());
  std::vector<long> stride(rank, 1);
  for (int a = rank - 2; a >= 0; --a) stride[a] = stride[a + 1] * dims[a + 1];
  for (long i = 0; i < v.size(); ++i) {
    long rem = i, j = 0;
    for (int a = 0; a < rank; ++a) {
      const int idx = static_cast<int>(rem / stride[a]);
      rem %= stride[a];
      const int shifted = (idx + dims[a] / 2) % dims[a];
      j += shifted * stride[a];
    }
    out[i] = v[j];
  }
  return out;
}

}  // namespace

PhaseDensity convolve(const PhaseDensity& f, const PhaseDensity& g) {
  if (f.grid() != g.grid()) throw GridMismatchError("convolve: grids differ");
  const auto& grid = f.grid();
  const auto dims = phaseDims(grid);

  // The x-major linear order of PhaseDensity is row-major over
  // (x_1..x_d, xi_1..xi_d), matching phaseDims. The second factor is rolled
  // so its origin node sits at index 0, turning the cyclic index convolution
  // into the phase-space convolution.
  Eigen::VectorXcd fa = f.values().cast<std::complex<double>>().matrix();
  Eigen::VectorXcd ga =
      rollOriginToFront(dims, g.values()).cast<std::complex<double>>().matrix();
  fft::forward_nd_inplace(fa.data(), dims);
  fft::forward_nd_inplace(ga.data(), dims);
  fa.array() *= ga.array();
  fft::backward_nd_inplace(fa.data(), dims);
  const double scale = grid.cellWeight() / static_cast<double>(grid.size());
  Eigen::ArrayXd out = fa.real().array() * scale;

  const bool prob =
      f.kind() == DensityKind::Probability && g.kind() == DensityKind::Probability;
  return PhaseDensity(grid, std::move(out),
                      prob ? DensityKind::Probability : DensityKind::Signed);
}

PhaseDensity lincomb(double a, const PhaseDensity& f, double b, const PhaseDensity& g) {
  if (f.grid() != g.grid()) throw GridMismatchError("lincomb: grids differ");
  Eigen::ArrayXd v = a * f.values() + b * g.values();
  return PhaseDensity(f.grid(), std::move(v), DensityKind::Signed);
}

void write_phase_csv(std::ostream& os, const PhaseDensity& f) {
  if (f.grid().dim() != 1) throw Error("write_phase_csv: only d=1 is serialized");
  os << "x,xi,value\n";
  char buf[96];
  const auto& g = f.grid();
  for (long i = 0; i < g.size(); ++i) {
    const PhasePoint z = g.point(i);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", z.x[0], z.xi[0],
                  f.values()[i]);
    os << buf;
  }
}

void write_phase_csv(const std::string& path, const PhaseDensity& f) {
  std::ofstream os(path);
  if (!os) throw Error("write_phase_csv: cannot open " + path);
  write_phase_csv(os, f);
}

PhaseDensity read_phase_csv(std::istream& is, const PhaseGrid& grid, DensityKind kind) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,xi,value", 0) != 0)
    throw ConfigParseError("read_phase_csv: missing x,xi,value header");
  Eigen::ArrayXd v(grid.size());
  long i = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (i >= grid.size()) throw ConfigParseError("read_phase_csv: too many rows");
    std::istringstream ss(line);
    double x, xi, val;
    char c1, c2;
    if (!(ss >> x >> c1 >> xi >> c2 >> val) || c1 != ',' || c2 != ',')
      throw ConfigParseError("read_phase_csv: bad row '" + line + "'");
    const PhasePoint z = grid.point(i);
    if (std::abs(z.x[0] - x) > 1e-9 || std::abs(z.xi[0] - xi) > 1e-9)
      throw GridMismatchError("read_phase_csv: node coordinates do not match grid");
    v[i++] = val;
  }
  if (i != grid.size()) throw ConfigParseError("read_phase_csv: too few rows");
  return PhaseDensity(grid, std::move(v), kind);
}

}  // namespace qot
