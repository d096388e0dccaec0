#include "qot/classical_ot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "qot/errors.hpp"

namespace qot {

void DiscreteMeasure::validate() const {
  if (static_cast<long>(support.size()) != weights.size())
    throw Error("DiscreteMeasure: support/weight size mismatch");
  if (weights.size() == 0) throw Error("DiscreteMeasure: empty");
  if (weights.minCoeff() < 0.0) throw Error("DiscreteMeasure: negative weight");
  if (std::abs(weights.sum() - 1.0) > 1e-10)
    throw Error("DiscreteMeasure: mass " + std::to_string(weights.sum()));
}

double DiscreteMeasure::momentZ(double n) const {
  if (n == 0.0) return 1.0;
  double s = 0.0;
  for (long i = 0; i < weights.size(); ++i)
    s += weights[i] * std::pow(support[i].normSq(dim), 0.5 * n);
  return std::pow(s, 1.0 / n);
}

double TransportPlan::marginalDefect(const DiscreteMeasure& mu,
                                     const DiscreteMeasure& nu) const {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(mu.weights.size());
  Eigen::VectorXd col = Eigen::VectorXd::Zero(nu.weights.size());
  for (const auto& e : entries) {
    row[e.i] += e.mass;
    col[e.j] += e.mass;
  }
  return std::max((row - mu.weights).cwiseAbs().maxCoeff(),
                  (col - nu.weights).cwiseAbs().maxCoeff());
}

namespace {

double costPow(const PhasePoint& a, const PhasePoint& b, int dim, int p) {
  double s = 0.0;
  for (int ax = 0; ax < dim; ++ax) {
    const double ddx = a.x[ax] - b.x[ax];
    const double ddxi = a.xi[ax] - b.xi[ax];
    s += ddx * ddx + ddxi * ddxi;
  }
  return p == 2 ? s : std::sqrt(s);
}

Eigen::MatrixXd costMatrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p) {
  const long m = mu.weights.size();
  const long n = nu.weights.size();
  Eigen::MatrixXd C(m, n);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < m; ++i)
      C(i, j) = costPow(mu.support[i], nu.support[j], mu.dim, p);
  return C;
}

/// Transportation simplex on the dense bipartite problem. Nodes 0..m-1 are
/// sources, m..m+n-1 sinks; the basis is a spanning tree of m+n-1 arcs
/// (degenerate zero-flow arcs allowed).
class TransportSimplex {
 public:
  TransportSimplex(Eigen::VectorXd a, Eigen::VectorXd b, const Eigen::MatrixXd& C)
      : a_(std::move(a)), b_(std::move(b)), C_(C), m_(a_.size()), n_(b_.size()) {}

  void solve() {
    northWestInit();
    const double scale = std::max(1.0, C_.cwiseAbs().maxCoeff());
    const double tol = 1e-12 * scale;
    const long max_pivots = 50L * (m_ + n_) * 10 + 10000;
    for (long it = 0; it < max_pivots; ++it) {
      computePotentials();
      long bi, bj;
      const double r = bestReducedCost(bi, bj);
      if (r >= -tol) return;
      pivot(bi, bj);
    }
    throw NonConvergenceError("transport simplex: pivot limit reached");
  }

  double objective() const {
    double s = 0.0;
    for (const auto& arc : basis_) s += arc.flow * C_(arc.i, arc.j);
    return s;
  }

  TransportPlan plan() const {
    TransportPlan out;
    for (const auto& arc : basis_)
      if (arc.flow > 0.0)
        out.entries.push_back({static_cast<int>(arc.i), static_cast<int>(arc.j),
                               arc.flow});
    return out;
  }

 private:
  struct Arc {
    long i, j;
    double flow;
  };

  void northWestInit() {
    basis_.clear();
    basis_.reserve(m_ + n_ - 1);
    Eigen::VectorXd a = a_, b = b_;
    long i = 0, j = 0;
    while (i < m_ && j < n_) {
      const double f = std::min(a[i], b[j]);
      basis_.push_back({i, j, f});
      a[i] -= f;
      b[j] -= f;
      // Move in exactly one direction per step so the arcs form a tree even
      // when both residuals hit zero (degenerate case).
      if (i == m_ - 1 && j == n_ - 1) break;
      if (j == n_ - 1 || (a[i] <= b[j] && i < m_ - 1))
        ++i;
      else
        ++j;
    }
  }

  void buildAdjacency(std::vector<std::vector<long>>& adj) const {
    adj.assign(m_ + n_, {});
    for (long k = 0; k < static_cast<long>(basis_.size()); ++k) {
      adj[basis_[k].i].push_back(k);
      adj[m_ + basis_[k].j].push_back(k);
    }
  }

  void computePotentials() {
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    parent_arc_.assign(m_ + n_, -1);
    parent_.assign(m_ + n_, -1);
    std::vector<std::vector<long>> adj;
    buildAdjacency(adj);
    std::vector<long> stack{0};
    std::vector<char> seen(m_ + n_, 0);
    seen[0] = 1;
    while (!stack.empty()) {
      const long node = stack.back();
      stack.pop_back();
      for (long k : adj[node]) {
        const Arc& arc = basis_[k];
        const long other = (node == arc.i) ? m_ + arc.j : arc.i;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_[other] = node;
        parent_arc_[other] = k;
        if (other >= m_)
          v_[other - m_] = C_(arc.i, arc.j) - u_[arc.i];
        else
          u_[other] = C_(arc.i, arc.j) - v_[node - m_];
        stack.push_back(other);
      }
    }
  }

  double bestReducedCost(long& bi, long& bj) const {
    const Eigen::Map<const Eigen::VectorXd> u(u_.data(), m_);
    const Eigen::Map<const Eigen::VectorXd> v(v_.data(), n_);
    double best = 0.0;
    bi = bj = -1;
    for (long j = 0; j < n_; ++j) {
      long i;
      const double r = (C_.col(j) - u).minCoeff(&i) - v[j];
      if (r < best) {
        best = r;
        bi = i;
        bj = j;
      }
    }
    return best;
  }

  std::vector<long> pathToRoot(long node) const {
    std::vector<long> path;
    while (node != -1) {
      path.push_back(node);
      node = parent_[node];
    }
    return path;
  }

  void pivot(long ei, long ej) {
    // Cycle: entering arc + tree path between its endpoints.
    std::vector<long> pi = pathToRoot(ei);
    std::vector<long> pj = pathToRoot(m_ + ej);
    // Trim to the lowest common ancestor.
    long ci = static_cast<long>(pi.size()) - 1;
    long cj = static_cast<long>(pj.size()) - 1;
    while (ci > 0 && cj > 0 && pi[ci - 1] == pj[cj - 1]) {
      --ci;
      --cj;
    }
    pi.resize(ci + 1);
    pj.resize(cj + 1);

    // Walk the cycle assigning alternating orientation. The entering arc
    // (ei -> ej) carries +theta; arcs are + when traversed source->sink.
    std::vector<std::pair<long, int>> cycle;  // (basis index, sign)
    auto addPath = [&](const std::vector<long>& path, int start_sign) {
      int sign = start_sign;
      for (size_t t = 0; t + 1 < path.size(); ++t) {
        cycle.emplace_back(parent_arc_[path[t]], sign);
        sign = -sign;
      }
    };
    // From ei up to the LCA the first tree arc is a sink-arc of ei (source
    // side): alternation starts with -.
    addPath(pi, -1);
    addPath(pj, +1);

    double theta = 1e300;
    long leave = -1;
    for (const auto& [k, s] : cycle)
      if (s < 0 && basis_[k].flow < theta) {
        theta = basis_[k].flow;
        leave = k;
      }
    if (leave < 0) throw InfeasibleError("transport simplex: unbounded pivot");

    for (const auto& [k, s] : cycle) basis_[k].flow += s * theta;
    basis_[leave] = {ei, ej, theta};
  }

  Eigen::VectorXd a_, b_;
  const Eigen::MatrixXd& C_;
  long m_, n_;
  std::vector<Arc> basis_;
  std::vector<double> u_, v_;
  std::vector<long> parent_, parent_arc_;
};

}  // namespace

OtResult wasserstein_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int p) {
  if (p != 1 && p != 2) throw Error("wasserstein_exact: p must be 1 or 2");
  mu.validate();
  nu.validate();
  const Eigen::MatrixXd C = costMatrix(mu, nu, p);
  TransportSimplex simplex(mu.weights, nu.weights, C);
  simplex.solve();
  OtResult out;
  out.objective = simplex.objective();
  out.value = p == 2 ? std::sqrt(std::max(out.objective, 0.0)) : out.objective;
  out.plan = simplex.plan();
  return out;
}

Discretization discretize(const PhaseDensity& f, long max_atoms, double prune_tol) {
  if (f.kind() != DensityKind::Probability)
    throw Error("discretize: requires a probability density");
  const PhaseGrid& g = f.grid();
  const double w = g.cellWeight();

  std::vector<std::pair<double, long>> atoms;
  atoms.reserve(g.size());
  for (long i = 0; i < g.size(); ++i) {
    const double mass = f.values()[i] * w;
    if (mass > prune_tol) atoms.emplace_back(mass, i);
  }
  if (atoms.empty()) throw Error("discretize: all mass pruned");
  if (static_cast<long>(atoms.size()) > max_atoms) {
    std::nth_element(atoms.begin(), atoms.begin() + max_atoms, atoms.end(),
                     [](auto& a, auto& b) { return a.first > b.first; });
    atoms.resize(max_atoms);
  }
  // Deterministic order regardless of the selection above.
  std::sort(atoms.begin(), atoms.end(),
            [](auto& a, auto& b) { return a.second < b.second; });

  Discretization out;
  out.measure.dim = g.dim();
  out.measure.support.reserve(atoms.size());
  out.measure.weights.resize(atoms.size());
  double kept = 0.0;
  for (size_t k = 0; k < atoms.size(); ++k) {
    out.measure.support.push_back(g.point(atoms[k].second));
    out.measure.weights[k] = atoms[k].first;
    kept += atoms[k].first;
  }
  out.dropped_mass = f.quadrature() - kept;
  out.measure.weights /= kept;
  const double ddx = g.spatial().dx();
  const double ddxi = g.dxi();
  out.cell_diameter = std::sqrt(g.dim() * (ddx * ddx + ddxi * ddxi));
  return out;
}

InterpolationCheck interpolation_lemma_check(const DiscreteMeasure& mu,
                                             const DiscreteMeasure& nu, double n) {
  if (!(n > 2.0)) throw Error("interpolation_lemma_check: n must be > 2");
  InterpolationCheck out;
  out.theta = n / (2.0 * (n - 1.0));
  out.c_n = (n - 1.0) * std::pow(n - 2.0, (2.0 - n) / (n - 1.0));
  out.lhs_w2 = wasserstein_exact(mu, nu, 2).value;
  out.w1 = wasserstein_exact(mu, nu, 1).value;
  out.z_mu = mu.momentZ(n);
  out.z_nu = nu.momentZ(n);
  out.rhs = out.c_n * std::pow(out.z_mu + out.z_nu, out.theta) *
            std::pow(out.w1, 1.0 - out.theta);
  return out;
}

void write_measure_csv(std::ostream& os, const DiscreteMeasure& m) {
  if (m.dim != 1) throw Error("write_measure_csv: only d=1 is serialized");
  os << "x,xi,weight\n";
  char buf[96];
  for (long i = 0; i < m.weights.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", m.support[i].x[0],
                  m.support[i].xi[0], m.weights[i]);
    os << buf;
  }
}

DiscreteMeasure read_measure_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("x,xi,weight", 0) != 0)
    throw ConfigParseError("read_measure_csv: missing x,xi,weight header");
  DiscreteMeasure m;
  m.dim = 1;
  std::vector<double> w;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x, xi, wt;
    char c1, c2;
    if (!(ss >> x >> c1 >> xi >> c2 >> wt) || c1 != ',' || c2 != ',')
      throw ConfigParseError("read_measure_csv: bad row '" + line + "'");
    m.support.push_back(PhasePoint::at(x, xi));
    w.push_back(wt);
  }
  m.weights = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
  m.validate();
  return m;
}

void write_plan_csv(std::ostream& os, const TransportPlan& p) {
  os << "i,j,mass\n";
  char buf[64];
  for (const auto& e : p.entries) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", e.i, e.j, e.mass);
    os << buf;
  }
}

}  // namespace qot
