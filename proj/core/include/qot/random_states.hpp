#pragma once

#include <cstdint>
#include <random>

#include "qot/kernel_ops.hpp"
#include "qot/phase_density.hpp"

namespace qot {

/// Deterministic RNG. Gaussians use hand-rolled Box-Muller so streams are
/// bit-stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() {
    return (gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u = 0.0;
    do { u = uniform(); } while (u <= 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    have_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }
  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_ = false;
  double spare_ = 0.0;
};

/// Random smooth wavefunction, strictly band-limited to |p| <= 0.45 of the
/// momentum band per axis and localized around the grid center.
/// ||psi||_{l2(dx)} = 1.
Vec random_wavefunction(const SpatialGrid& g, Rng& rng);

/// Random rank-`rank` mixed state built from orthonormalized random
/// wavefunctions; smooth, band-limited, h^d Tr = 1.
DensityOperator random_density_operator(const SpatialGrid& g, std::uint64_t seed,
                                        int rank = 4);

/// Random probability density: a mixture of Gaussian bumps with widths of a
/// few sqrt(hbar), confined to the middle of the grid.
PhaseDensity random_phase_density(const PhaseGrid& phase, std::uint64_t seed,
                                  int bumps = 5);

}  // namespace qot
