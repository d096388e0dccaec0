#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "qot/phase_density.hpp"

namespace qot {

/// Discrete probability measure on phase space.
struct DiscreteMeasure {
  std::vector<PhasePoint> support;
  Eigen::VectorXd weights;  // nonnegative, sum 1 (within 1e-10)
  int dim = 1;

  void validate() const;
  /// Z_n = (sum w |z|^n)^{1/n}; n = 0 returns 1.
  double momentZ(double n) const;
};

/// Sparse coupling between two discrete measures.
struct TransportPlan {
  struct Entry {
    int i, j;
    double mass;
  };
  std::vector<Entry> entries;
  /// Marginal defect max(|row sums - mu|, |col sums - nu|).
  double marginalDefect(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const;
};

struct OtResult {
  double value = 0.0;  // W_p = optimum^{1/p}
  double objective = 0.0;  // sum pi_ij |z_i - z_j|^p
  TransportPlan plan;
};

/// Exact W_p (p in {1,2}) by a transportation network simplex.
OtResult wasserstein_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p);

struct SinkhornResult {
  double value = 0.0;      // W_p upper bound from the rounded feasible plan
  double objective = 0.0;  // primal cost of the rounded plan
  double dual_gap = 0.0;   // objective - LP-feasible dual value, >= 0
  int iterations = 0;
  TransportPlan plan;
};

/// Entropic OT in the log domain; the returned value is a certified upper
/// bound (plan rounded to exact marginals) with a duality-gap certificate.
SinkhornResult wasserstein_sinkhorn(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    int p, double epsilon, int max_iter = 20000,
                                    double marginal_tol = 1e-10);

/// Cell-centered atoms, pruned below `prune_tol` and renormalized.
struct Discretization {
  DiscreteMeasure measure;
  double dropped_mass = 0.0;
  double cell_diameter = 0.0;  // W_2 discretization error bound
};
Discretization discretize(const PhaseDensity& f, long max_atoms = 2000,
                          double prune_tol = 1e-12);

/// Both sides of the moment-interpolation bound
///   W_2 <= C_n (Z_n(mu) + Z_n(nu))^theta W_1^{1-theta},
/// theta = n/(2(n-1)), C_n = (n-1)(n-2)^{(2-n)/(n-1)}, by exact LP values.
struct InterpolationCheck {
  double lhs_w2 = 0.0;
  double rhs = 0.0;
  double w1 = 0.0;
  double c_n = 0.0;
  double theta = 0.0;
  double z_mu = 0.0;
  double z_nu = 0.0;
};
InterpolationCheck interpolation_lemma_check(const DiscreteMeasure& mu,
                                             const DiscreteMeasure& nu, double n);

/// CSV: measures as `x,xi,weight`, plans as `i,j,mass`.
void write_measure_csv(std::ostream& os, const DiscreteMeasure& m);
DiscreteMeasure read_measure_csv(std::istream& is);
void write_plan_csv(std::ostream& os, const TransportPlan& p);

}  // namespace qot
