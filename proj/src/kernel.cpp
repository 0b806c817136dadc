#include "twoml/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "twoml/error.hpp"
#include "twoml/numeric.hpp"

namespace twoml {

namespace {

constexpr double kMatchTol = 1e-12;

// Golden-section minimum of f on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

const char* inf_case_name(InfCase c) noexcept {
  switch (c) {
    case InfCase::UnitPoint: return "UnitPoint";
    case InfCase::Interior: return "Interior";
    case InfCase::LimitPlus: return "LimitPlus";
    case InfCase::LimitMinus: return "LimitMinus";
    case InfCase::Zero: return "Zero";
  }
  return "Unknown";
}

double inf_linear(double M, double d, double a, double b) {
  if (!(M <= 0.0)) throw Error(Errc::InvalidArgument, "slope M must be <= 0");
  if (!(a > 0.0) || !(b > 0.0)) throw Error(Errc::InvalidArgument, "a and b must be positive");
  const double log2_ab = std::log2(a) + std::log2(b);
  if (std::fabs(M * log2_ab - std::log2(b)) > kMatchTol) return 0.0;
  return std::exp2(d * log2_ab);
}

InfResult log2_inf(const FrontierCurve& curve, int j, double log2_b) {
  if (curve.is_linear()) {
    throw Error(Errc::NonConcaveCurve, "log2_inf needs a strictly concave curve; use inf_linear");
  }
  if (j < 0) throw Error(Errc::InvalidArgument, "level j must be >= 0");

  if (log2_b < 0.0 && log2_b >= -kMatchTol) log2_b = 0.0;
  if (j == 0) {
    if (log2_b == 0.0) return {0.0, InfCase::UnitPoint, std::nullopt};
    return {kNegInf, InfCase::Zero, std::nullopt};
  }
  if (log2_b < 0.0 || log2_b >= j) return {kNegInf, InfCase::Zero, std::nullopt};

  const double jd = static_cast<double>(j);
  const double rho = log2_b / jd;
  const RatioImage image = curve.slope_ratio_image();
  if (image.interior(rho)) {
    const double sigma = curve.invert_slope_ratio(rho);
    const double s = curve.value(sigma);
    return {-jd * s + (s - sigma) * log2_b, InfCase::Interior, sigma};
  }

  // Objective (L − j)·S(σ) − σL followed along the asymptote S ≈ mσ + b at the relevant end.
  const bool plus = rho >= image.hi;
  const InfCase kase = plus ? InfCase::LimitPlus : InfCase::LimitMinus;
  const std::optional<Asymptote> asym =
      plus ? curve.right_asymptote() : std::optional<Asymptote>(curve.left_asymptote());
  if (!asym) {
    // S′ → −∞ on the right; the objective increases without bound there.
    throw Error(Errc::InvalidArgument, "slope ratio beyond an unbounded-slope end");
  }
  const double growth = asym->slope * (log2_b - jd) - log2_b;
  if (std::fabs(growth) <= kMatchTol * std::max(1.0, jd)) {
    return {asym->intercept * (log2_b - jd), kase, std::nullopt};
  }
  const double direction = plus ? 1.0 : -1.0;
  if (direction * growth < 0.0) return {kNegInf, kase, std::nullopt};
  throw Error(Errc::InvalidArgument, "objective grows at the limiting end");
}

double log2_objective(const FrontierCurve& curve, double log2_a, double log2_b, double sigma) {
  const double s = curve.value(sigma);
  return log2_a * s + log2_b * (s - sigma);
}

double brute_force_log2_inf(const FrontierCurve& curve, double log2_a, double log2_b, double lo,
                            double hi, double step, bool refine) {
  const std::vector<double> grid = uniform_grid(lo, hi, step);
  double best = kPosInf;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = log2_objective(curve, log2_a, log2_b, grid[i]);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  if (refine && grid.size() >= 2) {
    const double left = grid[best_i == 0 ? 0 : best_i - 1];
    const double right = grid[std::min(best_i + 1, grid.size() - 1)];
    const double refined = golden_min(
        [&](double s) { return log2_objective(curve, log2_a, log2_b, s); }, left, right, 80);
    best = std::min(best, refined);
  }
  return best;
}

double brute_force_inf(const FrontierCurve& curve, double a, double b, double lo, double hi,
                       double step, bool refine) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(Errc::InvalidArgument, "a and b must be positive");
  return std::exp2(
      brute_force_log2_inf(curve, std::log2(a), std::log2(b), lo, hi, step, refine));
}

double tangent_gap_sup(const FrontierCurve& curve, double sigma0, double eps,
                       const std::vector<double>& grid) {
  if (!(eps > 0.0)) throw Error(Errc::InvalidArgument, "eps must be positive");
  const double s0 = curve.value(sigma0);
  double best = kNegInf;
  for (double sigma : grid) {
    const double d = curve.slope(sigma);
    const double v = (d * (sigma0 - sigma) + curve.value(sigma) - s0 + eps) / (d - 1.0);
    best = std::max(best, v);
  }
  return best;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || !std::isfinite(step) ||
      hi < lo) {
    throw Error(Errc::BadGrid, "grid needs finite lo <= hi and step > 0");
  }
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

}  // namespace twoml
