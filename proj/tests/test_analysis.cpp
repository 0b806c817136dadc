#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "twoml/analysis.hpp"
#include "twoml/error.hpp"
#include "twoml/kernel.hpp"
#include "twoml/numeric.hpp"
#include "twoml/synthesis.hpp"

using namespace twoml;
using doctest::Approx;

namespace {

EstimatedFrontier from_function(const std::vector<double>& grid, double (*s)(double)) {
  EstimatedFrontier ef;
  for (double x : grid) ef.points.push_back({x, s(x), s(x), 1, 0});
  return ef;
}

}  // namespace

TEST_CASE("membership margin") {
  CHECK(membership_margin(CoefficientField(0.0, 5), 0.3, 0.1) == 0.0);

  CoefficientField one(0.0, 3);
  one.set(1, 1, 0.0);
  CHECK(membership_margin(one, 0.0, 0.0) == 1.0);
  CHECK(membership_margin(one, 1.0, 1.0) == Approx(2.0 * 2.0));

  const CoefficientField lin = synth_linear(0.5, 0.0, WeightScheme::unit(), 0.0, 24);
  CHECK(std::isfinite(membership_margin(lin, 0.4, 0.0)));
  CHECK(membership_margin(lin, 0.4, 0.0) == 1.0);
  CHECK(membership_margin(lin, 0.6, 0.0) == kPosInf);
}

TEST_CASE("estimator on a hand-computed field") {
  CoefficientField f(0.0, 20);
  for (int j = 1; j <= 20; ++j) f.set(j, 1, -static_cast<double>(j));
  const auto grid = uniform_grid(-2, 3, 0.5);
  const auto ef = estimate_frontier(f, grid, 10, 20);
  CHECK(ef.j0 == 10);
  CHECK(ef.j1 == 20);
  for (const auto& p : ef.points) {
    double want = kPosInf;
    for (int j = 10; j <= 20; ++j) want = std::min(want, (j - p.sigma) / (j - 1.0));
    CHECK(p.raw == Approx(want).epsilon(1e-14));
    CHECK(p.argmin_k == 1);
  }
  // default window is the upper half
  CHECK(estimate_frontier(f, grid).j0 == 10);
  CHECK_THROWS_AS((void)estimate_frontier(f, grid, 0, 20), Error);
  CHECK_THROWS_AS((void)estimate_frontier(f, grid, 5, 21), Error);
  CHECK_THROWS_AS((void)estimate_frontier(f, {1.0, 0.0}, 5, 10), Error);
}

TEST_CASE("estimator bookkeeping") {
  CoefficientField f(0.0, 12);
  f.set(8, 255, -3.0);  // L = 8: degenerate
  f.set(8, 1, kNegInf);  // zero coefficient
  const auto empty = estimate_frontier(f, {0.0, 1.0}, 6, 12);
  CHECK(empty.skipped_degenerate == 1);
  for (const auto& p : empty.points) {
    CHECK(p.s_hat == kPosInf);
    CHECK(p.argmin_j == -1);
  }
}

TEST_CASE("isotonic clip keeps raw values") {
  const auto c = FrontierCurve::softplus_concave(1.0, 1.0);
  const CoefficientField f = synth_general(c, WeightScheme::unit(), 0.0, 14);
  const auto ef = estimate_frontier(f, uniform_grid(-4, 4, 0.1), 7, 14);
  for (std::size_t i = 0; i < ef.points.size(); ++i) {
    CHECK(ef.points[i].s_hat <= ef.points[i].raw);
    if (i > 0) CHECK(ef.points[i].s_hat <= ef.points[i - 1].s_hat);
  }
}

TEST_CASE("scaling moves the estimate by a bounded amount") {
  CoefficientField f = synth_linear(0.4, 0.25, WeightScheme::unit(), 0.0, 16);
  const auto grid = uniform_grid(-3, 1, 0.25);
  const auto base = estimate_frontier(f, grid, 8, 16);
  double max_l = 0.0;
  for (int j = 8; j <= 16; ++j) {
    for (std::size_t i = 0; i < f.level_size(j); ++i) max_l = std::max(max_l, log2_1p(f.offset(j, f.k_at(j, i))));
  }
  REQUIRE(max_l < 8.0);
  f.shift_log2(10.0);
  const auto scaled = estimate_frontier(f, grid, 8, 16);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::fabs(scaled.points[i].s_hat - base.points[i].s_hat) <= 10.0 / (8.0 - max_l) + 1e-12);
  }
}

TEST_CASE("estimator ignores zero entries and insertion order") {
  const auto c = FrontierCurve::softplus_concave(0.5, 3.0);
  const CoefficientField f = synth_general(c, WeightScheme::unit(), 0.0, 12);
  CoefficientField g(0.0, 12);
  std::vector<Coefficient> all;
  f.for_each([&](const Coefficient& e) { all.push_back(e); });
  auto rng = oracle::engine(50);
  std::shuffle(all.begin(), all.end(), rng);
  for (const auto& e : all) g.set(e.j, e.k, e.log2_magnitude, e.sign);
  for (int j = 1; j <= 12; ++j) {
    for (std::int64_t k = -(std::int64_t{1} << j) + 1; k < (std::int64_t{1} << j); k += 7) {
      if (!g.find(j, k)) g.set(j, k, kNegInf);
    }
  }
  const auto grid = uniform_grid(-2, 2, 0.25);
  const auto a = estimate_frontier(f, grid, 6, 12);
  const auto b = estimate_frontier(g, grid, 6, 12);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a.points[i].s_hat == b.points[i].s_hat);
}

TEST_CASE("exponents from sampled frontiers") {
  const auto grid = uniform_grid(-2, 2, 0.25);
  const auto line = estimate_exponents(from_function(grid, [](double s) { return 1.0 - s; }));
  CHECK(line.pointwise_holder == Approx(1.0));
  CHECK(line.local_holder == Approx(0.5));
  CHECK(line.oscillation == Approx(1.0));
  CHECK(line.chirp == Approx(1.0));
  CHECK(line.weak_scaling == Approx(3.0));

  const auto flat = estimate_exponents(from_function(grid, [](double) { return 0.7; }));
  CHECK(flat.pointwise_holder == 0.7);
  CHECK(flat.local_holder == Approx(0.7));
  CHECK(flat.weak_scaling == 0.7);
  CHECK(flat.chirp == 0.0);
  CHECK(flat.oscillation == 0.0);

  const auto right_only = uniform_grid(0.5, 2, 0.25);
  CHECK_THROWS_AS((void)estimate_exponents(from_function(right_only, [](double s) { return 1.0 - s; })), Error);
  // fixed point outside the grid
  CHECK_THROWS_AS((void)estimate_exponents(from_function(grid, [](double s) { return 5.0 - s; })), Error);
}

TEST_CASE("linear checker") {
  for (double alpha : {0.0, 0.3, 0.7}) {
    for (double gamma : {0.0, 0.25, 0.5}) {
      const auto f = synth_linear(alpha, gamma, WeightScheme::unit(), 0.0, 24);
      const auto r = check_linear(f, alpha, gamma);
      CHECK_MESSAGE(r.pass, "alpha=" << alpha << " gamma=" << gamma);
      CHECK(r.support_violations == 0);
    }
  }
  const auto f = synth_linear(0.5, 0.5, WeightScheme::unit(), 0.0, 24);
  const auto off = check_linear(f, 0.8, 0.5);
  CHECK_FALSE(off.pass);
  REQUIRE_FALSE(off.cond_ii_best_trajectory.empty());
  CHECK(off.cond_ii_best_trajectory.back().log2c_over_j == Approx(0.3));

  const auto none = check_linear(CoefficientField(0.0, 24), 0.5, 0.5);
  CHECK_FALSE(none.pass);
  CHECK(std::find(none.reasons.begin(), none.reasons.end(), "no nonzero trajectory") != none.reasons.end());
  CHECK_THROWS_AS((void)check_linear(f, 0.5, 1.0), Error);
}

TEST_CASE("compare") {
  const auto c = FrontierCurve::linear(0.5, 0.5);
  const auto grid = uniform_grid(-1, 1, 0.5);
  EstimatedFrontier same;
  EstimatedFrontier shifted;
  for (double s : grid) {
    same.points.push_back({s, c.value(s), c.value(s), 1, 0});
    shifted.points.push_back({s, c.value(s) + 0.1, c.value(s) + 0.1, 1, 0});
  }
  shifted.points.push_back({2.0, kPosInf, kPosInf, -1, 0});
  CHECK(compare(c, same) == 0.0);
  CHECK(compare(c, shifted) == Approx(0.1));
}
