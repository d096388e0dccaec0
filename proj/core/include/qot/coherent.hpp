#pragma once

#include <vector>

#include "qot/kernel_ops.hpp"

namespace qot {

/// Minimal-uncertainty Gaussian wave packet centered at the phase point z,
///   psi_z(y) = (pi hbar)^{-d/4} e^{-|y-x0|^2/(2 hbar)} e^{i xi0.(y - x0/2)/hbar},
/// periodized over the torus and normalized to ||psi||_{l2(dx)} = 1.
struct CoherentState {
  SpatialGrid grid;
  PhasePoint center;
  Vec psi;
};

Vec coherent_vector(const SpatialGrid& g, const PhasePoint& z);
CoherentState make_coherent(const SpatialGrid& g, const PhasePoint& z);
DensityOperator coherent_density(const SpatialGrid& g, const PhasePoint& z);

/// Batch evaluator for the coherent family over all phase-grid nodes,
/// factored into per-axis envelope and phase caches. Column index is the
/// phase-grid linear index (x-major).
class CoherentBatch {
 public:
  explicit CoherentBatch(PhaseGrid phase);

  long columns() const { return phase_.size(); }
  Vec column(long z_lin) const;
  /// Fill out(:, 0..end-begin) with columns [begin, end).
  void fillColumns(long z_begin, long z_end, Mat& out) const;

 private:
  void axisColumn(int axis, int jx, int kxi, Vec& out) const;

  PhaseGrid phase_;
  std::vector<Eigen::VectorXd> env_;   // per x-node envelope (shared across axes)
  std::vector<double> inv_norm_;       // per x-node 1/||envelope||_{l2(dx)}
  std::vector<Vec> phase_vec_;         // per xi-node e^{i xi y / hbar}
};

}  // namespace qot
