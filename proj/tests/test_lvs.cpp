#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "twoml/error.hpp"
#include "twoml/lvs.hpp"
#include "twoml/numeric.hpp"

using namespace twoml;
using doctest::Approx;

TEST_CASE("g inverts sigma minus S") {
  const auto gf = g_from_curve(FrontierCurve::exp_concave(0, 1));
  const double root = oracle::bisect([](double s) { return s + std::exp(s) - 1.0; }, -5, 5);
  CHECK(gf.g(1.0) == Approx(root).scale(1.0).epsilon(1e-9));
  const auto lin = g_from_curve(FrontierCurve::linear(0.4, 0.0));
  for (double sp : {-3.0, -0.5, 0.0, 0.25, 7.0}) CHECK(lin.g(sp) == Approx(sp + 0.4).epsilon(1e-9));

  const auto sp_curve = FrontierCurve::softplus_concave(1.0, 2.0);
  const auto gs = g_from_curve(sp_curve);
  auto rng = oracle::engine(40);
  double prev = -1e300;
  for (double s = -20.0; s <= 60.0; s += 0.37) {
    const double v = gs.g(s);
    CHECK(v >= prev);
    prev = v;
    const double want = oracle::bisect([&](double x) { return x - sp_curve.value(x) - s; }, -100, 100);
    CHECK(v == Approx(want).scale(1.0).epsilon(1e-9));
  }
  // outside the sampled range
  CHECK(gs.g(500.0) == Approx(oracle::bisect([&](double x) { return x - sp_curve.value(x) - 500.0; }, -1e3, 1e3)));
}

TEST_CASE("Legendre transform, default convention") {
  const auto lin = g_from_curve(FrontierCurve::linear(0.4, 0.0));
  CHECK(legendre(lin, 1.0) == Approx(-0.4));
  CHECK(legendre(lin, 0.5) == kNegInf);
  CHECK(legendre(lin, 0.0) == kNegInf);
  CHECK_THROWS_AS((void)legendre(lin, 1.5), Error);

  const auto curve = FrontierCurve::exp_concave(1.0, 1.0);
  const auto gf = g_from_curve(curve);
  for (double sigma0 : {-3.0, -1.0, 0.0, 0.3, 1.5}) {
    const double s0 = sigma0 - curve.value(sigma0);
    const double rho = 1.0 - curve.slope_ratio(sigma0);
    CHECK(legendre(gf, rho) == Approx(rho * s0 - sigma0).scale(1.0).epsilon(1e-9));
  }
  for (double rho = 0.01; rho < 1.0; rho += 0.07) {
    CHECK(std::fabs(legendre(gf, rho) - legendre_scan(gf, rho)) <= 1e-4);
  }
  // the left edge of the slope range has no finite conjugate for the exponential family
  CHECK(legendre(gf, 0.0) == kNegInf);
  CHECK(legendre(gf, 1.0) == Approx(-1.0));

  auto flipped = gf;
  flipped.set_convention(LegendreConvention::SupGMinusLinear);
  CHECK(legendre(flipped, 0.4) == -legendre(gf, 0.4));
}

TEST_CASE("rho intervals") {
  const auto a = lvs_rho_interval(3, 1);
  CHECK_FALSE(a.empty);
  CHECK(a.lo == Approx(1.0 - 1.0 / 3.0));
  CHECK(a.hi == 1.0);
  const auto b = lvs_rho_interval(4, 16);
  CHECK_FALSE(b.empty);
  CHECK(b.lo == 0.0);
  CHECK(b.hi == 0.0);
  CHECK(lvs_rho_interval(4, 0).empty);
  CHECK(lvs_rho_interval(4, 17).empty);
  for (int j = 1; j <= 10; ++j) {
    for (std::int64_t k = 1; k < (std::int64_t{1} << j); ++k) {
      const auto iv = lvs_rho_interval(j, k);
      REQUIRE_FALSE(iv.empty);
      const double mid = 0.5 * (iv.lo + iv.hi);
      CHECK(static_cast<std::int64_t>(std::floor(std::exp2(j * (1.0 - mid)))) == k);
    }
  }
}

TEST_CASE("LVS exponents and coefficients") {
  const auto curve = FrontierCurve::exp_concave(2.0, 1.0);
  auto gf = g_from_curve(curve);
  CHECK(gf.g(0.0) > 0.0);
  for (int j = 1; j <= 8; ++j) {
    for (std::int64_t k = 1; k < (std::int64_t{1} << j); ++k) {
      const auto e = lvs_exponent(gf, j, k);
      CHECK(e.beta <= j);
    }
  }
  const CoefficientField f = synth_lvs(gf, 8);
  CHECK(f.scheme_tag() == "lvs");
  CHECK(f.level_size(0) == 0);
  f.for_each([&](const Coefficient& c) {
    CHECK(c.k >= 1);
    CHECK(c.log2_magnitude >= -static_cast<double>(c.j) * c.j);
  });
  const auto report = calibrate_convention(gf, 6);
  CHECK(report.consistent);
  CHECK(report.default_error <= 1e-6);

  CHECK_THROWS_AS((void)synth_lvs(g_from_curve(FrontierCurve::exp_concave(1.0, 1.0)), 4), Error);
}
