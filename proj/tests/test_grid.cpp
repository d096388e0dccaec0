#include <doctest.h>

#include <qot/grid.hpp>
#include <qot/phase_density.hpp>
#include <qot/random_states.hpp>

using namespace qot;

namespace {

PhaseGrid makePhase(double hbar = 0.125, int n = 64, double L = 5.0) {
  return PhaseGrid(SpatialGrid(PlanckScale(hbar, 1), n, L));
}

PhaseDensity deltaCell(const PhaseGrid& g, const PhasePoint& z) {
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(g.size());
  long best = 0;
  double bd = 1e300;
  for (long i = 0; i < g.size(); ++i) {
    const double d = g.distSq(i, z);
    if (d < bd) { bd = d; best = i; }
  }
  v[best] = 1.0 / g.cellWeight();
  return PhaseDensity(g, v, DensityKind::Probability);
}

}  // namespace

TEST_CASE("grid conventions") {
  PhaseGrid g = makePhase();
  const auto& sg = g.spatial();
  CHECK(sg.dx() == doctest::Approx(10.0 / 64));
  // dual lattice spacing 2*pi*hbar/(2L); refined phase lattice at half that.
  CHECK(sg.dualSpacing() == doctest::Approx(M_PI * 0.125 / 5.0));
  CHECK(g.dxi() == doctest::Approx(0.5 * sg.dualSpacing()));
  CHECK(g.xiPerAxis() == 128);

  // Quadrature of 1 equals (2L) * (N * dual spacing) = N h exactly.
  const double vol = g.cellWeight() * g.size();
  CHECK(vol == doctest::Approx(2.0 * 5.0 * 64 * sg.dualSpacing()).epsilon(1e-13));
  CHECK(vol == doctest::Approx(64 * g.scale().h()).epsilon(1e-13));

  // Nodes symmetric about 0, x = 0 and xi = 0 on the lattice.
  CHECK(sg.node(32) == doctest::Approx(0.0));
  CHECK(g.xiNode(64) == doctest::Approx(0.0));
}

TEST_CASE("gaussian_gh: mass, moments, tail guard") {
  PhaseGrid g = makePhase();
  const double hbar = 0.125;
  PhaseDensity gh = gaussian_gh(g);
  CHECK(gh.quadrature() == doctest::Approx(1.0).epsilon(1e-8));

  // second moment d*hbar (d=1)
  const double z2 = std::pow(moment(gh, 2.0), 2.0);
  CHECK(z2 == doctest::Approx(hbar).epsilon(1e-6));
  CHECK(moment(gh, 2.0) == doctest::Approx(std::sqrt(hbar)).epsilon(1e-6));
  CHECK(moment(gh, 0.0) == 1.0);

  PhasePoint m = first_moment(gh);
  CHECK(std::abs(m.x[0]) < 1e-10);
  CHECK(std::abs(m.xi[0]) < 1e-10);

  // shifted center keeps unit mass
  PhaseDensity gs = gaussian_gh(g, PhasePoint::at(1.0, 0.3));
  CHECK(gs.quadrature() == doctest::Approx(1.0).epsilon(1e-8));

  // center too close to the box edge trips the tail check
  CHECK_THROWS_AS((void)gaussian_gh(g, PhasePoint::at(4.7, 0.0)), TailTruncationError);
}

TEST_CASE("moment: delta surrogate and uniform patch") {
  PhaseGrid g = makePhase(0.25, 128, 4.0);
  // an exact grid node, so the snapped atom sits exactly at z0
  PhasePoint z0 = PhasePoint::at(g.spatial().node(80), g.xiNode(123));
  PhaseDensity d = deltaCell(g, z0);
  CHECK(moment(d, 1.0) ==
        doctest::Approx(std::hypot(z0.x[0], z0.xi[0])).epsilon(1e-12));

  // uniform on the phase-space square [-1,1]^2 (d=1): Z_2 = sqrt(2/3);
  // midpoint quadrature of an indicator converges at O(dx), hence the loose
  // tolerance plus a refinement check.
  auto uniformPatch = [](const PhaseGrid& pg) {
    Eigen::ArrayXd v = Eigen::ArrayXd::Zero(pg.size());
    for (long i = 0; i < pg.size(); ++i) {
      const PhasePoint z = pg.point(i);
      if (std::abs(z.x[0]) <= 1.0 && std::abs(z.xi[0]) <= 1.0) v[i] = 1.0;
    }
    v /= v.sum() * pg.cellWeight();
    return PhaseDensity(pg, v, DensityKind::Probability);
  };
  const double zc = std::sqrt(2.0 / 3.0);
  const double za = moment(uniformPatch(g), 2.0);
  CHECK(za == doctest::Approx(zc).epsilon(0.02));
  PhaseGrid g2 = makePhase(0.25, 256, 4.0);
  const double zb = moment(uniformPatch(g2), 2.0);
  CHECK(std::abs(zb - zc) < std::abs(za - zc) + 1e-12);
}

TEST_CASE("convolve: identity, Gaussian doubling, mass product") {
  PhaseGrid g = makePhase();
  PhaseDensity gh = gaussian_gh(g);
  PhaseDensity d0 = deltaCell(g, PhasePoint{});

  PhaseDensity idc = convolve(gh, d0);
  CHECK((idc.values() - gh.values()).abs().maxCoeff() < 1e-10 * gh.maxAbs());

  PhaseDensity g2 = convolve(gh, gh);
  CHECK(g2.quadrature() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::pow(moment(g2, 2.0), 2.0) == doctest::Approx(2.0 * 0.125).epsilon(1e-6));

  Rng rng(20240901);
  PhaseDensity f1 = random_phase_density(g, rng.raw());
  PhaseDensity f2 = random_phase_density(g, rng.raw());
  Eigen::ArrayXd s1 = f1.values() * 1.7;
  Eigen::ArrayXd s2 = f2.values() * 0.3;
  PhaseDensity a(g, s1, DensityKind::Signed);
  PhaseDensity b(g, s2, DensityKind::Signed);
  PhaseDensity ab = convolve(a, b);
  CHECK(ab.quadrature() ==
        doctest::Approx(a.quadrature() * b.quadrature()).epsilon(1e-10));

  // commutativity
  PhaseDensity ba = convolve(b, a);
  CHECK((ab.values() - ba.values()).abs().maxCoeff() < 1e-10 * (1.0 + ab.maxAbs()));
}

TEST_CASE("phase density csv round trip") {
  PhaseGrid g = makePhase(0.25, 32, 3.0);
  PhaseDensity gh = gaussian_gh(g);
  std::stringstream ss;
  write_phase_csv(ss, gh);
  PhaseDensity back = read_phase_csv(ss, g, DensityKind::Probability);
  CHECK((back.values() - gh.values()).abs().maxCoeff() == 0.0);
}

TEST_CASE("grid mismatch raises") {
  PhaseGrid g = makePhase();
  PhaseGrid h = makePhase(0.125, 32, 2.5);
  CHECK_THROWS_AS((void)convolve(gaussian_gh(g), gaussian_gh(h)), GridMismatchError);
}
