#include <doctest.h>

#include <qot/coherent.hpp>
#include <qot/qop.hpp>
#include <qot/random_states.hpp>
#include <qot/transforms.hpp>

using namespace qot;

namespace {

SpatialGrid makeGrid(double hbar = 0.125, int n = 64, double L = 5.0) {
  return SpatialGrid(PlanckScale(hbar, 1), n, L);
}

double phaseInner(const PhaseDensity& a, const PhaseDensity& b) {
  return (a.values() * b.values()).sum() * a.grid().cellWeight();
}

}  // namespace

TEST_CASE("wigner of a coherent state is g_h") {
  SpatialGrid g = makeGrid();
  PhaseGrid phase(g);
  const PhasePoint z = PhasePoint::at(0.5, 0.25 * M_PI * 0.125 / 6.0 * 8);  // on no lattice in particular
  DensityOperator rho = coherent_density(g, PhasePoint{});
  PhaseDensity f = wigner(rho);
  PhaseDensity gh = gaussian_gh(phase);
  CHECK((f.values() - gh.values()).abs().maxCoeff() < 1e-9 * gh.maxAbs());

  DensityOperator rz = coherent_density(g, z);
  PhaseDensity fz = wigner(rz);
  PhaseDensity ghz = gaussian_gh(phase, z);
  CHECK((fz.values() - ghz.values()).abs().maxCoeff() < 1e-8 * gh.maxAbs());
}

TEST_CASE("wigner mass and Plancherel are exact on the corpus") {
  SpatialGrid g = makeGrid();
  for (int s = 0; s < 3; ++s) {
    DensityOperator r1 = random_density_operator(g, 100 + s);
    DensityOperator r2 = random_density_operator(g, 200 + s);
    PhaseDensity f1 = wigner(r1);
    PhaseDensity f2 = wigner(r2);

    CHECK(f1.quadrature() == doctest::Approx(density_mass(r1)).epsilon(1e-11));

    const double lhs = phaseInner(f1, f2);
    const double rhs = hd_hs_inner(g, r1.kernel, r2.kernel).real();  // rho Hermitian
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

    // isometry against the semiclassical Schatten L2 norm
    CHECK(f1.l2Norm() == doctest::Approx(schatten_norm(r1, 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("wigner of the maximally mixed state is flat") {
  // K = c Id. The flat value is 1/(N h). The identity puts 1/N of its trace
  // on the unpaired momentum-Nyquist bin, which no even-grid Wigner function
  // can hold; the transform parks that remnant on the xi = 0 and xi = band
  // edge rows. Everywhere else the transform is exactly flat.
  SpatialGrid g = makeGrid();
  PhaseGrid phase(g);
  const int n = g.pointsPerAxis();
  const long m = phase.xiSize();
  DensityOperator rho;
  rho.grid = g;
  const double c = 1.0 / (g.scale().h() * n * g.dx());
  rho.kernel = c * Mat::Identity(g.size(), g.size());
  rho.normalized = true;

  // Husimi via the coherent matrix elements: <psi_z| c Id |psi_z> = c, flat
  // to machine precision.
  PhaseDensity h = husimi_dual(rho);
  CHECK(h.values().maxCoeff() - h.values().minCoeff() < 1e-13);

  // The raw Wigner transform cannot hold the identity's Nyquist-bin remnant
  // pointwise (it sheds 1/distance tails from the xi = 0 and band-edge rows),
  // but its mass and its xi-marginal, h K_jj, stay exact.
  PhaseDensity f = wigner(rho);
  CHECK(f.quadrature() == doctest::Approx(1.0).epsilon(1e-12));
  const double row = g.scale().h() * c;  // expected xi-marginal at every x
  for (long j = 0; j < n; ++j) {
    double s = 0.0;
    for (long k = 0; k < m; ++k) s += f.values()[j * m + k];
    CHECK(s * phase.dxi() == doctest::Approx(row).epsilon(1e-12));
  }
}

TEST_CASE("wigner of the first excited oscillator state dips negative") {
  SpatialGrid g = makeGrid();
  const double hbar = g.scale().hbar;
  Vec psi(g.size());
  for (long j = 0; j < g.size(); ++j) {
    const double x = g.point(j)[0];
    psi[j] = std::pow(M_PI * hbar, -0.25) * std::sqrt(2.0 / hbar) * x *
             std::exp(-x * x / (2.0 * hbar));
  }
  psi /= std::sqrt(psi.squaredNorm() * g.dxVol());
  DensityOperator rho = pure_state_density(g, psi);
  PhaseDensity f = wigner(rho);
  // closed form -(2/h) e^{-r^2/hbar} L_1(2 r^2/hbar) at r = 0
  const double at0 = -2.0 / g.scale().h();
  PhaseGrid phase(g);
  long center = (g.pointsPerAxis() / 2) * phase.xiSize() + g.pointsPerAxis();
  CHECK(f.values()[center] == doctest::Approx(at0).epsilon(1e-6));
  CHECK(f.values().minCoeff() < 0.0);
}

TEST_CASE("weyl quantization inverts the wigner transform") {
  SpatialGrid g = makeGrid();
  PhaseGrid phase(g);

  // round trip operator -> phase -> operator; the floor is set by the
  // Agmon tails of the mode basis at the box edge, not by the transform
  DensityOperator rho = random_density_operator(g, 7);
  PhaseDensity f = wigner(rho);
  Mat back = weyl_quantize_kernel(f);
  CHECK((back - rho.kernel).cwiseAbs().maxCoeff() <
        1e-7 * rho.kernel.cwiseAbs().maxCoeff());

  // On this coarse grid the floor is the x-bandwidth of g_h,
  // e^{-hbar pi^2/(4 dx^2)} ~ 3e-6; a finer grid reaches 1e-11.
  DensityOperator coh = coherent_density(g, PhasePoint::at(0.4, 0.2));
  Mat back2 = weyl_quantize_kernel(wigner(coh));
  CHECK((back2 - coh.kernel).cwiseAbs().maxCoeff() <
        1e-5 * coh.kernel.cwiseAbs().maxCoeff());
  SpatialGrid gf(PlanckScale(0.125, 1), 128, 5.0);
  DensityOperator cohf = coherent_density(gf, PhasePoint::at(0.4, 0.2));
  Mat back3 = weyl_quantize_kernel(wigner(cohf));
  CHECK((back3 - cohf.kernel).cwiseAbs().maxCoeff() <
        1e-11 * cohf.kernel.cwiseAbs().maxCoeff());

  // round trip phase -> operator -> phase on a random smooth symbol
  PhaseDensity s = random_phase_density(phase, 99);
  PhaseDensity s2 = wigner_kernel(g, weyl_quantize_kernel(s));
  CHECK((s2.values() - s.values()).abs().maxCoeff() < 1e-7 * s.maxAbs());

  // g_h maps to the coherent projector h^{-d} |psi_0><psi_0|
  Mat K = weyl_quantize_kernel(gaussian_gh(phase));
  Mat P = coherent_density(g, PhasePoint{}).kernel;
  CHECK((K - P).cwiseAbs().maxCoeff() < 1e-5 * P.cwiseAbs().maxCoeff());

  // constant symbol maps to a multiple of the identity
  Eigen::ArrayXd ones = Eigen::ArrayXd::Constant(phase.size(), 1.0);
  Mat I = weyl_quantize_kernel(PhaseDensity(phase, ones, DensityKind::Signed));
  Mat expect = Mat::Identity(g.size(), g.size()) / g.dx();
  CHECK((I - expect).cwiseAbs().maxCoeff() < 1e-9 / g.dx());
}

TEST_CASE("husimi: positivity, mass, dual form, sup bound") {
  SpatialGrid g = makeGrid();
  DensityOperator rho = random_density_operator(g, 31);
  PhaseDensity h = husimi_dual(rho);  // delocalized state: dual route avoids x-edge truncation
  CHECK(h.values().minCoeff() > -1e-9);
  CHECK(h.quadrature() == doctest::Approx(1.0).epsilon(1e-7));

  PhaseDensity hd = husimi_dual(rho);
  CHECK((h.values() - hd.values()).abs().maxCoeff() < 1e-6 * (1.0 + h.maxAbs()));

  // || husimi ||_inf <= || rho ||_{L^inf}
  CHECK(h.maxAbs() <= schatten_norm(rho, INFINITY) * (1.0 + 1e-9));

  // coherent state: husimi = g_h * g_h, second moment 2 d hbar
  DensityOperator c0 = coherent_density(g, PhasePoint{});
  PhaseDensity hc = husimi(c0);
  CHECK(std::pow(moment(hc, 2.0), 2) == doctest::Approx(2 * 0.125).epsilon(1e-6));
}

TEST_CASE("toeplitz quantization: delta symbol, gaussian symbol, duality") {
  SpatialGrid g = makeGrid(0.125, 64, 5.0);
  PhaseGrid phase(g);

  // delta cell at an on-grid point -> coherent projector
  PhasePoint z = PhasePoint::at(g.node(30), phase.xiNode(54));
  Eigen::ArrayXd v = Eigen::ArrayXd::Zero(phase.size());
  v[(30 * phase.xiSize()) + 54] = 1.0 / phase.cellWeight();
  DensityOperator td = toeplitz_quantize(PhaseDensity(phase, v, DensityKind::Probability));
  Mat P = coherent_density(g, z).kernel;
  CHECK((td.kernel - P).cwiseAbs().maxCoeff() < 1e-8 * P.cwiseAbs().maxCoeff());

  // gaussian symbol: wigner(T_f) = g_h * g_h
  DensityOperator tg = toeplitz_quantize(gaussian_gh(phase));
  CHECK(density_mass(tg) == doctest::Approx(1.0).epsilon(1e-6));
  PhaseDensity wt = wigner(tg);
  PhaseDensity gg = convolve(gaussian_gh(phase), gaussian_gh(phase));
  CHECK((wt.values() - gg.values()).abs().maxCoeff() < 1e-6 * gg.maxAbs());

  // adjoint pair: h^d Tr(mu T_phi) = integral of husimi(mu) * phi
  DensityOperator mu = random_density_operator(g, 5);
  Rng rng(77);
  PhaseDensity bump = random_phase_density(phase, 42);
  Eigen::ArrayXd sym = bump.values() - 0.5 * bump.values().mean();
  PhaseDensity phi(phase, sym, DensityKind::Signed);
  ObservableOperator tphi = toeplitz_op(phi);
  const double lhs = hd_trace(g, op_compose(g, mu.kernel, tphi.dense));
  const double rhs = (husimi(mu).values() * phi.values()).sum() * phase.cellWeight();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));

  // PSD of the toeplitz quantization
  Eigen::SelfAdjointEigenSolver<Mat> es(tg.kernel * g.dxVol(), Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-9);
}

TEST_CASE("partition of unity defect is tiny") {
  SpatialGrid g = makeGrid(0.125, 64, 5.0);
  CHECK(partition_unity_defect(PhaseGrid(g)) < 1e-8);
}

TEST_CASE("translation covariance on the lattice") {
  SpatialGrid g = makeGrid();
  PhaseGrid phase(g);
  const long m = phase.xiSize();
  const int n = g.pointsPerAxis();

  auto shiftDiff = [&](const PhaseDensity& f, const PhaseDensity& ft, int sx, int sxi) {
    double maxdiff = 0.0;
    for (long j = 0; j < n; ++j)
      for (long k = 0; k < m; ++k) {
        const long js = ((j - sx) % n + n) % n;
        const long ks = ((k - 2 * sxi) % m + m) % m;
        maxdiff = std::max(maxdiff,
                           std::abs(ft.values()[j * m + k] - f.values()[js * m + ks]));
      }
    return maxdiff;
  };

  // machine-exact for a tightly confined state
  DensityOperator coh = coherent_density(g, PhasePoint{});
  const int sx = 5, sxi = 3;  // x in dx units, xi in pi*hbar/L units
  PhasePoint z = PhasePoint::at(sx * g.dx(), sxi * g.dualSpacing());
  auto trc = translate(coh, z);
  CHECK(!trc.snapped);
  CHECK(shiftDiff(wigner(coh), wigner(trc.rho), sx, sxi) <
        1e-8 * (1.0 + wigner(coh).maxAbs()));

  // random corpus states carry e^{-..} mode tails at the box edge; the
  // covariance defect is tail-sized, not machine-sized
  DensityOperator rho = random_density_operator(g, 12);
  auto tr = translate(rho, z);
  CHECK(shiftDiff(wigner(rho), wigner(tr.rho), sx, sxi) < 2e-5);

  // group law and inverse
  auto tr2 = translate(tr.rho, PhasePoint::at(-z.x[0], -z.xi[0]));
  CHECK((tr2.rho.kernel - rho.kernel).cwiseAbs().maxCoeff() <
        1e-12 * rho.kernel.cwiseAbs().maxCoeff());
}

TEST_CASE("band limit guard") {
  SpatialGrid g = makeGrid();
  DensityOperator rho = random_density_operator(g, 3);
  CHECK(momentum_tail_fraction(rho) < 1e-12);
  CHECK_NOTHROW(require_band_limited(rho));

  // a coherent state boosted near the band edge fails the check
  DensityOperator fast = coherent_density(g, PhasePoint::at(0.0, 0.8 * g.momentumBand()));
  CHECK(momentum_tail_fraction(fast) > 0.1);
  CHECK_THROWS_AS(require_band_limited(fast), ResolutionError);
}
