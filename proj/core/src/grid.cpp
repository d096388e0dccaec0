#include "qot/grid.hpp"

#include "qot/errors.hpp"

namespace qot {

SpatialGrid::SpatialGrid(PlanckScale scale, int n_points, double half_width)
    : scale_(scale), n_(n_points), L_(half_width) {
  if (n_ < 4 || n_ % 2 != 0) throw Error("SpatialGrid: N must be even and >= 4");
  if (!(L_ > 0.0)) throw Error("SpatialGrid: half width must be positive");
}

long SpatialGrid::size() const {
  long s = 1;
  for (int a = 0; a < dim(); ++a) s *= n_;
  return s;
}

Eigen::VectorXd SpatialGrid::nodes() const {
  Eigen::VectorXd v(n_);
  for (int j = 0; j < n_; ++j) v[j] = node(j);
  return v;
}

Eigen::VectorXd SpatialGrid::momentumFftNodes() const {
  Eigen::VectorXd v(n_);
  for (int a = 0; a < n_; ++a) v[a] = momentumFftBin(a);
  return v;
}

std::array<int, 2> SpatialGrid::decode(long lin) const {
  if (dim() == 1) return {static_cast<int>(lin), 0};
  return {static_cast<int>(lin / n_), static_cast<int>(lin % n_)};
}

long SpatialGrid::encode(const std::array<int, 2>& j) const {
  if (dim() == 1) return j[0];
  return static_cast<long>(j[0]) * n_ + j[1];
}

std::array<double, 2> SpatialGrid::point(long lin) const {
  auto j = decode(lin);
  if (dim() == 1) return {node(j[0]), 0.0};
  return {node(j[0]), node(j[1])};
}

Eigen::VectorXd PhaseGrid::xiNodes() const {
  const int m = xiPerAxis();
  Eigen::VectorXd v(m);
  for (int k = 0; k < m; ++k) v[k] = xiNode(k);
  return v;
}

long PhaseGrid::xiSize() const {
  long s = 1;
  for (int a = 0; a < dim(); ++a) s *= xiPerAxis();
  return s;
}

std::array<int, 2> PhaseGrid::decodeXi(long lin) const {
  const int m = xiPerAxis();
  if (dim() == 1) return {static_cast<int>(lin), 0};
  return {static_cast<int>(lin / m), static_cast<int>(lin % m)};
}

long PhaseGrid::encodeXi(const std::array<int, 2>& k) const {
  if (dim() == 1) return k[0];
  return static_cast<long>(k[0]) * xiPerAxis() + k[1];
}

PhasePoint PhaseGrid::point(long lin) const {
  const long xl = lin / xiSize();
  const long kl = lin % xiSize();
  auto x = spatial_.point(xl);
  auto k = decodeXi(kl);
  PhasePoint z;
  z.x = x;
  z.xi = {xiNode(k[0]), dim() == 2 ? xiNode(k[1]) : 0.0};
  return z;
}

double PhaseGrid::distSq(long lin, const PhasePoint& center) const {
  PhasePoint z = point(lin);
  double s = 0.0;
  for (int a = 0; a < dim(); ++a) {
    const double ddx = z.x[a] - center.x[a];
    const double ddxi = z.xi[a] - center.xi[a];
    s += ddx * ddx + ddxi * ddxi;
  }
  return s;
}

}  // namespace qot
