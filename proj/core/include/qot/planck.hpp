#pragma once

#include <cmath>
#include <numbers>

#include "qot/errors.hpp"

namespace qot {

/// Semiclassical scale. Carries ħ, h = 2πħ and the spatial dimension d.
/// Every trace normalization h^d Tr and every phase-space volume element
/// in the library flows through this struct.
struct PlanckScale {
  double hbar = 1.0;
  int dim = 1;

  PlanckScale() = default;
  PlanckScale(double hbar_, int dim_ = 1) : hbar(hbar_), dim(dim_) {
    if (!(hbar > 0.0)) throw Error("PlanckScale: hbar must be positive");
    if (dim < 1 || dim > 2) throw Error("PlanckScale: only d=1 and d=2 are supported");
  }

  double h() const { return 2.0 * std::numbers::pi * hbar; }
  /// h^d, the unit of phase-space volume per quantum state.
  double hd() const { return std::pow(h(), dim); }

  bool operator==(const PlanckScale& o) const { return hbar == o.hbar && dim == o.dim; }
};

}  // namespace qot
