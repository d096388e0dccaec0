#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "qot/planck.hpp"

namespace qot {

/// A phase-space point (x, ξ). Only the first `dim` entries of each half are used.
struct PhasePoint {
  std::array<double, 2> x{0.0, 0.0};
  std::array<double, 2> xi{0.0, 0.0};

  static PhasePoint at(double x0, double xi0) { return {{x0, 0.0}, {xi0, 0.0}}; }
  double normSq(int dim) const {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += x[a] * x[a] + xi[a] * xi[a];
    return s;
  }
};

/// Periodic discretization of [-L, L)^d with N (even) points per axis,
/// x_j = -L + j*dx, dx = 2L/N.
///
/// Two momentum lattices are attached to the grid:
///  * the operator lattice p_a = a*πħ/L, a = -N/2..N/2-1, holding the exact
///    plane-wave spectrum of p = -iħ∇ on the grid (spacing 2πħ/(2L));
///  * the refined phase lattice ξ_k = (k-N)*πħ/(2L), k = 0..2N-1, at half the
///    operator spacing. Half-sums of two operator momenta land on the refined
///    lattice, so Wigner transforms sampled there are exact.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(PlanckScale scale, int n_points, double half_width);

  const PlanckScale& scale() const { return scale_; }
  int dim() const { return scale_.dim; }
  int pointsPerAxis() const { return n_; }
  double halfWidth() const { return L_; }
  double dx() const { return 2.0 * L_ / n_; }
  /// Volume element of the position quadrature, dx^d.
  double dxVol() const { return std::pow(dx(), dim()); }
  /// Total number of spatial nodes, N^d.
  long size() const;

  double node(int j) const { return -L_ + j * dx(); }
  Eigen::VectorXd nodes() const;

  /// Operator momentum lattice spacing, πħ/L.
  double dualSpacing() const { return std::numbers::pi * scale_.hbar / L_; }
  /// Largest representable |p| on the operator lattice, πħ/dx.
  double momentumBand() const { return std::numbers::pi * scale_.hbar / dx(); }
  /// Momentum value for FFT bin a (FFT ordering: 0,1,..,N/2-1,-N/2,..,-1).
  double momentumFftBin(int a) const {
    int c = (a < n_ / 2) ? a : a - n_;
    return c * dualSpacing();
  }
  Eigen::VectorXd momentumFftNodes() const;

  /// Per-axis index decode for spatial linear indices (row-major, axis 0 major).
  std::array<int, 2> decode(long lin) const;
  long encode(const std::array<int, 2>& j) const;
  /// Position vector of a spatial linear index.
  std::array<double, 2> point(long lin) const;

  bool operator==(const SpatialGrid& o) const {
    return scale_ == o.scale_ && n_ == o.n_ && L_ == o.L_;
  }
  bool operator!=(const SpatialGrid& o) const { return !(*this == o); }

 private:
  PlanckScale scale_;
  int n_ = 0;
  double L_ = 0.0;
};

/// Discretized phase space attached to a SpatialGrid: x on the spatial nodes,
/// ξ on the refined lattice with M = 2N points per axis, spacing πħ/(2L),
/// ξ_k = (k - N)*πħ/(2L). The quadrature weight per node is (dx*dξ)^d and the
/// total phase-space volume is N^d h^d.
class PhaseGrid {
 public:
  PhaseGrid() = default;
  explicit PhaseGrid(SpatialGrid spatial) : spatial_(std::move(spatial)) {}

  const SpatialGrid& spatial() const { return spatial_; }
  const PlanckScale& scale() const { return spatial_.scale(); }
  int dim() const { return spatial_.dim(); }

  int xiPerAxis() const { return 2 * spatial_.pointsPerAxis(); }
  double dxi() const { return 0.5 * spatial_.dualSpacing(); }
  double xiNode(int k) const { return (k - spatial_.pointsPerAxis()) * dxi(); }
  Eigen::VectorXd xiNodes() const;
  /// Largest |ξ| representable on the phase grid (= momentumBand()).
  double xiBand() const { return spatial_.momentumBand(); }

  long xSize() const { return spatial_.size(); }
  long xiSize() const;
  /// Total number of phase nodes; layout is x-major: lin = x_lin * xiSize() + xi_lin.
  long size() const { return xSize() * xiSize(); }
  double cellWeight() const { return std::pow(spatial_.dx() * dxi(), dim()); }

  std::array<int, 2> decodeXi(long lin) const;
  long encodeXi(const std::array<int, 2>& k) const;
  PhasePoint point(long lin) const;
  /// Squared distance |z - center|^2 of a phase node from a given point.
  double distSq(long lin, const PhasePoint& center) const;

  bool operator==(const PhaseGrid& o) const { return spatial_ == o.spatial_; }
  bool operator!=(const PhaseGrid& o) const { return !(*this == o); }

 private:
  SpatialGrid spatial_;
};

}  // namespace qot
