#include <doctest.h>

#include <cmath>

#include "cesforge/darboux.hpp"
#include "cesforge/error.hpp"

using namespace cesforge;

namespace {

const TransformKind T1 = TransformKind::of(TransformTag::T1);
const TransformKind T2 = TransformKind::of(TransformTag::T2);
const TransformKind T3 = TransformKind::of(TransformTag::T3);
const TransformKind T4 = TransformKind::of(TransformTag::T4);
const TransformKind D1 = TransformKind::of(TransformTag::OneDim);

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);
  return x;
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

PotentialModel v1_of(double g) { return base_potential(OscillatorParams::radial(g)); }

}  // namespace

TEST_CASE("T1 ground state gives the gamma+1 partner") {
  const auto c = build_phi(T1, 1.0, 0);
  const Grid grid(0.05, 12.0, 0.01, Geometry::radial);
  const GridFunction v2 = transform(v1_of(1.0), c.phi, grid);
  const PotentialModel v1g2 = v1_of(2.0);
  double mean = 0.0;
  std::vector<double> diff;
  for (std::size_t i = 0; i < v2.x.size(); ++i) diff.push_back(v2.values[i] - v1g2(v2.x[i]));
  for (double d : diff) mean += d;
  mean /= static_cast<double>(diff.size());
  double var = 0.0;
  for (double d : diff) var += (d - mean) * (d - mean);
  var /= static_cast<double>(diff.size());
  CHECK(var < 1e-16);
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("T3 N=0 gives base gamma+1 shifted down by 2") {
  const auto c = build_phi(T3, 1.0, 0);
  const DarbouxPartner v2(v1_of(1.0), c.phi, c.phi.domain());
  const PotentialModel v1g2 = v1_of(2.0);
  for (double r : linspace(0.05, 12, 300)) CHECK(v2(r) - v1g2(r) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("closed forms") {
  for (double g : {0.75, 1.0, 1.6}) {
    const PotentialModel t3 = closed_form_v2(T3, g, 1);
    const double g1 = 2.0 / (2.0 * g + 3.0);
    CHECK(t3.centrifugal() == doctest::Approx((g + 1) * (g + 2)));
    CHECK(t3.constant() == doctest::Approx(g + 0.5));
    REQUIRE(t3.rational_terms().size() == 1);
    CHECK(t3.rational_terms()[0].g == doctest::Approx(g1));
    CHECK(t3.rational_terms()[0].p == doctest::Approx(4 * g1 * g1));
    CHECK(t3.rational_terms()[0].q == doctest::Approx(-2 * g1));

    const PotentialModel t4 = closed_form_v2(T4, g, 1);
    CHECK(t4.centrifugal() == doctest::Approx(g * (g - 1)));
    CHECK(t4.constant() == doctest::Approx(g + 2.5));
    CHECK(t4.rational_terms()[0].g == doctest::Approx(2.0 / (2.0 * g - 1.0)));

    const PotentialModel t2 = closed_form_v2(T2, g, 0);
    CHECK(t2.centrifugal() == doctest::Approx(g * (g - 1)));
    CHECK(t2.constant() == doctest::Approx(g + 0.5));
    CHECK(t2.rational_terms().empty());
  }
  CHECK(closed_form_v2(T4, 1.0, 1).rational_terms()[0].g == 2.0);
  CHECK(closed_form_v2(T2, 1.0, 0).constant() == 1.5);
  CHECK(closed_form_v2(T3, 1.0, 2).log_term().has_value());
}

TEST_CASE("closed form agrees with the numeric transform") {
  const auto x = linspace(0.05, 12.0, 2000);
  for (const auto& k : {T1, T2, T3, T4}) {
    for (double g : {0.3, 0.75, 1.0, 1.6, 2.3}) {
      for (int n = 0; n <= 3; ++n) {
        std::optional<PhiConstruction> c;
        try {
          c = build_phi(k, g, n);
        } catch (const Error&) {
          continue;
        }
        if (!check_nodeless(c->phi, c->phi.domain()).nodeless) {
          CHECK_THROWS_AS(closed_form_v2(k, g, n), Error);
          continue;
        }
        const PotentialModel cf = closed_form_v2(k, g, n);
        const DarbouxPartner dp(v1_of(g), c->phi, c->phi.domain());
        double worst = 0.0;
        for (double r : x) worst = std::max(worst, std::fabs(cf(r) - dp(r)));
        CAPTURE(k.name());
        CAPTURE(g);
        CAPTURE(n);
        CHECK(worst < 1e-8);
      }
    }
  }
}

TEST_CASE("node in domain is rejected") {
  const auto c = build_phi(T2, 1.0, 1);
  try {
    DarbouxPartner(v1_of(1.0), c.phi, c.phi.domain());
    FAIL("expected node error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::node_in_domain);
  }
  CHECK_THROWS_AS(transform(v1_of(1.0), c.phi, Grid::radial_default()), Error);
  // A grid that stops before the node is fine.
  CHECK_NOTHROW(transform(v1_of(1.0), c.phi, Grid(0.01, 0.6, 0.005, Geometry::radial)));
  CHECK_THROWS_AS(closed_form_v2(T2, 1.0, 1), Error);
}

TEST_CASE("w correction") {
  CHECK(w_correction({{}, 0.0}, 1.7) == 0.0);
  CHECK(w_correction({{0.4}, 0.0}, 1.0) == doctest::Approx(4.0 / 7.0));
  CHECK(w_correction({{0.4, 1.0}, 0.0}, 1.0) == doctest::Approx(11.0 / 7.0));
  try {
    w_correction({{-0.25}, 0.0}, 2.0);
    FAIL("expected pole error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::node_in_domain);
  }
  const RiccatiCorrection c{{0.4, 1.3}, 0.0};
  const double h = 1e-5;
  for (double r : {0.3, 1.0, 2.2}) {
    CHECK(w_correction_derivative(c, r) ==
          doctest::Approx((w_correction(c, r + h) - w_correction(c, r - h)) / (2 * h)).epsilon(1e-8));
  }
}

TEST_CASE("Riccati residual") {
  const auto x = linspace(0.05, 12.0, 1000);
  CHECK(sup_abs(riccati_residual({{0.4}, 2.0}, 1.0, x)) < 1e-12);
  CHECK(sup_abs(riccati_residual({{}, 0.0}, 1.0, x)) < 1e-12);
  for (double v : riccati_residual({{0.4}, 0.0}, 1.0, x)) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(riccati_residual({{-1.0}, 0.0}, 1.0, x), Error);
  // Any nodeless polynomial phi with real factors.
  for (const auto& k : {T1, T2, T3, T4}) {
    for (double g : {0.3, 0.75, 1.0, 1.6, 2.3}) {
      for (int n = 0; n <= 3; ++n) {
        try {
          const auto c = build_phi(k, g, n);
          if (!check_nodeless(c.phi, c.phi.domain()).nodeless) continue;
          const auto split = riccati_split(c.spec, c.phi);
          CAPTURE(k.name());
          CAPTURE(g);
          CAPTURE(n);
          CHECK(sup_abs(riccati_residual(split.correction, split.w0, x)) < 1e-10);
        } catch (const Error& e) {
          CHECK((e.code() == Errc::ground_state_violation || e.code() == Errc::invalid_argument));
        }
      }
    }
  }
}

TEST_CASE("superpotential from phi") {
  const auto t30 = build_phi(T3, 1.0, 0);
  const RealFn w = superpotential_from_phi(t30.phi);
  for (double r : {0.2, 1.0, 3.0}) CHECK(w(r) == doctest::Approx(r + 2.0 / r));
  CHECK(superpotential_from_phi(build_phi(T3, 1.0, 1).phi)(1.0) == doctest::Approx(3.0 + 4.0 / 7.0));
  CHECK(superpotential_from_phi(build_phi(D1, 0.0, 1).phi)(0.0) == doctest::Approx(0.0));
  for (int n = 0; n <= 2; ++n) {
    const auto c = build_phi(T3, 1.0, n);
    const RiccatiCorrection corr{product_factors(c.phi), 0.0};
    const RealFn wp = superpotential_from_phi(c.phi);
    for (double r : linspace(0.05, 12.0, 500)) {
      CHECK(std::fabs(wp(r) - (r + 2.0 / r) - w_correction(corr, r)) < 1e-10);
    }
  }
}

TEST_CASE("w2p2 identity") {
  const auto x = linspace(0.05, 12.0, 1000);
  const auto c = build_phi(T3, 1.0, 1);
  CHECK(identity_w2p2(c.phi, superpotential_from_phi(c.phi), -2.0, 2.0, x) < 1e-12);
  const RealFn minus = [&](double r) { return -c.phi.log_derivative(r); };
  CHECK(identity_w2p2(c.phi, minus, -2.0, 2.0, x) < 1e-12);
  const RealFn built = [](double r) { return r + 2.0 / r + w_correction({{0.4}, 0.0}, r); };
  CHECK(identity_w2p2(c.phi, built, -2.0, 2.0, x) < 1e-10);
  // A wrong Delta shows up directly.
  CHECK(identity_w2p2(c.phi, built, -2.0, 1.0, x) == doctest::Approx(2.0));
}

TEST_CASE("product form") {
  const auto c = build_phi(T3, 1.0, 1);
  const PhiFunction p = product_phi(1.0, {0.4}, 1.0);
  for (double r : linspace(0.05, 6.0, 100)) CHECK(p(r) == doctest::Approx(c.phi(r)).epsilon(1e-12));
  const PhiFunction empty = product_phi(1.3, {}, 1.0);
  const auto c0 = build_phi(T3, 1.3, 0);
  for (double r : {0.5, 2.0}) CHECK(empty(r) == doctest::Approx(c0.phi(r)).epsilon(1e-13));
  for (double g : {0.75, 1.0, 1.6}) {
    const auto c2 = build_phi(T3, g, 2);
    const auto g2 = product_factors(c2.phi);
    REQUIRE(g2.size() == 2);
    const PhiFunction p2 = product_phi(g, g2, 1.0);
    const double k = p2(1.0) / c2.phi(1.0);
    for (double r : linspace(0.05, 6.0, 60)) CHECK(p2(r) == doctest::Approx(k * c2.phi(r)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(product_phi(1.0, {0.4, 0.4}, 1.0), Error);
  CHECK_THROWS_AS(product_phi(1.0, {0.4}, 0.0), Error);
}

TEST_CASE("wavefunction map") {
  const Grid grid = Grid::radial_default();
  const auto x = grid.points();
  const auto p = OscillatorParams::radial(1.0);
  std::vector<double> psi0 = sample(analytic_eigenfunction(p, 0), x).values;
  try {
    wavefunction_map(build_phi(T1, 1.0, 0).phi, x, psi0);
    FAIL("expected null result");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::null_result);
  }
  const std::vector<double> mapped = wavefunction_map(build_phi(T3, 1.0, 1).phi, x, psi0);
  CHECK(grid_norm(mapped, grid.step()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(wavefunction_map(build_phi(T3, 1.0, 1).phi, {0.1, 0.2}, {1.0, 2.0}), Error);
}

TEST_CASE("one-dimensional case") {
  const OneDimensionalCase d = one_dimensional_case();
  CHECK(d.epsilon == -2.5);
  const std::size_t n = d.v2.x.size();
  for (std::size_t i = 0; i < n / 2; ++i) CHECK(std::fabs(d.v2.values[i] - d.v2.values[n - 1 - i]) < 1e-12);
  CHECK(grid_norm(d.ground_state, 2e-3) == doctest::Approx(1.0));
  const double mid = d.ground_state[n / 2];
  const double expect = std::exp(-0.5) / 3.0 / (1.0 / d.phi(0.0));
  CHECK(d.ground_state[n / 2 + 500] / mid == doctest::Approx(expect).epsilon(1e-10));
  CHECK_THROWS_AS(one_dimensional_case(Grid::radial_default()), Error);
}
