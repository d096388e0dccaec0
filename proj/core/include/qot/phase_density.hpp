#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "qot/errors.hpp"
#include "qot/grid.hpp"

namespace qot {

enum class DensityKind { Probability, Signed };

/// Validation tolerances for probability-kind densities and operator traces.
struct GridTolerances {
  double tol_neg = 1e-9;
  double tol_mass = 1e-7;
};

/// Real function sampled on a PhaseGrid. Probability kind enforces
/// values >= -tol_neg and unit mass at construction; signed kind is free.
class PhaseDensity {
 public:
  PhaseDensity() = default;
  PhaseDensity(PhaseGrid grid, Eigen::ArrayXd values, DensityKind kind,
               GridTolerances tol = {});

  const PhaseGrid& grid() const { return grid_; }
  DensityKind kind() const { return kind_; }
  const Eigen::ArrayXd& values() const { return values_; }
  Eigen::ArrayXd& values() { return values_; }

  double quadrature() const { return values_.sum() * grid_.cellWeight(); }
  double maxAbs() const { return values_.abs().maxCoeff(); }
  double l2Norm() const {
    return std::sqrt((values_ * values_).sum() * grid_.cellWeight());
  }

 private:
  PhaseGrid grid_;
  Eigen::ArrayXd values_;
  DensityKind kind_ = DensityKind::Signed;
};

/// The semiclassical Gaussian g_h(z - center), g_h(z) = (2/h)^d e^{-|z|^2/ħ},
/// sampled on the grid. Throws TailTruncationError if the mass outside the
/// grid box exceeds 1e-8.
PhaseDensity gaussian_gh(const PhaseGrid& grid, const PhasePoint& center = {});

/// Z_n(f) = (∫ |z|^n f)^{1/n} by grid quadrature; n = 0 returns 1.
double moment(const PhaseDensity& f, double n);

/// ∫ z f(z) dz, the mean phase-space position of a probability density.
PhasePoint first_moment(const PhaseDensity& f);

/// Periodic convolution via FFT; mass multiplies: m(f*g) = m(f) m(g).
PhaseDensity convolve(const PhaseDensity& f, const PhaseDensity& g);

/// Pointwise linear combination a*f + b*g on a common grid.
PhaseDensity lincomb(double a, const PhaseDensity& f, double b, const PhaseDensity& g);

/// CSV serialization, header `x,xi,value`, row-major over the grid (d=1 only).
void write_phase_csv(std::ostream& os, const PhaseDensity& f);
void write_phase_csv(const std::string& path, const PhaseDensity& f);
PhaseDensity read_phase_csv(std::istream& is, const PhaseGrid& grid, DensityKind kind);

}  // namespace qot
