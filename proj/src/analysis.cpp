#include "twoml/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "twoml/error.hpp"
#include "twoml/numeric.hpp"

namespace twoml {

namespace {

constexpr double kDegenerateGap = 0.5;
constexpr double kGrowthSlope = 0.01;
constexpr double kGrowthCeiling = 60.0;
constexpr double kCheckThreshold = 0.05;

// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::int64_t domain_count(const CoefficientField& field, int j) {
  const double centre = std::ldexp(field.x0(), j);
  const double width = std::ldexp(1.0, j);
  auto lo = static_cast<std::int64_t>(std::floor(centre - width)) + 1;
  auto hi = static_cast<std::int64_t>(std::ceil(centre + width)) - 1;
  while (lo <= hi && !field.in_domain(j, lo)) ++lo;
  while (hi >= lo && !field.in_domain(j, hi)) --hi;
  return hi - lo + 1;
}

double interpolate(const std::vector<FrontierPoint>& pts, double sigma) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i].sigma;
    const double b = pts[i + 1].sigma;
    if (sigma >= a && sigma <= b) {
      if (sigma == a) return pts[i].s_hat;
      if (sigma == b) return pts[i + 1].s_hat;
      const double t = (sigma - a) / (b - a);
      return (1.0 - t) * pts[i].s_hat + t * pts[i + 1].s_hat;
    }
  }
  throw Error(Errc::GridTooNarrow, "sigma " + format_double(sigma) + " outside the grid");
}

}  // namespace

double membership_margin(const CoefficientField& field, double s, double s_prime) {
  std::vector<double> levels;
  std::vector<double> level_sup;
  for (int j = 0; j <= field.j_max(); ++j) {
    double sup = kNegInf;
    for (std::size_t i = 0; i < field.level_size(j); ++i) {
      const double lm = field.log2_at(j, i);
      if (lm == kNegInf) continue;
      const double L = log2_1p(field.offset(j, field.k_at(j, i)));
      sup = std::max(sup, lm + j * s + s_prime * L);
    }
    if (sup != kNegInf) {
      levels.push_back(j);
      level_sup.push_back(sup);
    }
  }
  if (levels.empty()) return 0.0;

  if (level_sup.back() > kGrowthCeiling) return kPosInf;
  const double top = levels.back();
  std::vector<double> upper_x;
  std::vector<double> upper_y;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] >= top / 2.0) {
      upper_x.push_back(levels[i]);
      upper_y.push_back(level_sup[i]);
    }
  }
  if (upper_x.size() >= 3 && fitted_slope(upper_x, upper_y) > kGrowthSlope) return kPosInf;
  return std::exp2(*std::max_element(level_sup.begin(), level_sup.end()));
}

EstimatedFrontier estimate_frontier(const CoefficientField& field,
                                    const std::vector<double>& sigma_grid, int j0, int j1) {
  if (j0 < 1 || j1 > field.j_max() || j0 >= j1) {
    throw Error(Errc::InvalidArgument, "level window needs 1 <= j0 < j1 <= j_max");
  }
  if (sigma_grid.empty()) throw Error(Errc::BadGrid, "empty sigma grid");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!std::isfinite(sigma_grid[i]) || (i > 0 && sigma_grid[i] <= sigma_grid[i - 1])) {
      throw Error(Errc::BadGrid, "sigma grid must be finite and strictly increasing");
    }
  }

  EstimatedFrontier ef;
  ef.j0 = j0;
  ef.j1 = j1;
  const std::size_t n = sigma_grid.size();
  std::vector<double> best(n, kPosInf);
  std::vector<int> best_j(n, -1);
  std::vector<std::int64_t> best_k(n, 0);

  for (int j = j0; j <= j1; ++j) {
    for (std::size_t i = 0; i < field.level_size(j); ++i) {
      const double lm = field.log2_at(j, i);
      if (lm == kNegInf) continue;
      const std::int64_t k = field.k_at(j, i);
      const double L = log2_1p(field.offset(j, k));
      const double gap = j - L;
      if (gap <= kDegenerateGap) {
        ++ef.skipped_degenerate;
        continue;
      }
      const double a = -lm / gap;
      const double b = L / gap;
      for (std::size_t g = 0; g < n; ++g) {
        const double q = a - sigma_grid[g] * b;
        if (q < best[g]) {
          best[g] = q;
          best_j[g] = j;
          best_k[g] = k;
        }
      }
    }
  }

  double running = kPosInf;
  for (std::size_t g = 0; g < n; ++g) {
    running = std::min(running, best[g]);
    ef.points.push_back({sigma_grid[g], running, best[g], best_j[g], best_k[g]});
  }
  return ef;
}

EstimatedFrontier estimate_frontier(const CoefficientField& field,
                                    const std::vector<double>& sigma_grid) {
  const int j1 = field.j_max();
  const int j0 = std::max(1, j1 / 2);
  return estimate_frontier(field, sigma_grid, j0, j1);
}

RegularityExponents estimate_exponents(const EstimatedFrontier& ef) {
  const auto& pts = ef.points;
  if (pts.size() < 2 || pts.front().sigma >= 0.0 || pts.back().sigma < 0.0) {
    throw Error(Errc::GridTooNarrow, "the sigma grid must contain points on both sides of 0");
  }
  RegularityExponents out;
  out.pointwise_holder = interpolate(pts, 0.0);

  bool found = false;
  for (std::size_t i = 0; i + 1 < pts.size() && !found; ++i) {
    const double d0 = pts[i].s_hat - pts[i].sigma;
    const double d1 = pts[i + 1].s_hat - pts[i + 1].sigma;
    if (!std::isfinite(d0) || !std::isfinite(d1)) continue;
    if (d0 >= 0.0 && d1 <= 0.0) {
      const double t = d0 == d1 ? 0.0 : d0 / (d0 - d1);
      out.local_holder = pts[i].sigma + t * (pts[i + 1].sigma - pts[i].sigma);
      found = true;
    }
  }
  if (!found) throw Error(Errc::GridTooNarrow, "the sigma grid does not bracket the fixed point");

  out.weak_scaling = pts.front().s_hat;
  std::size_t left = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].sigma < 0.0) left = i;
  }
  out.oscillation = -(out.pointwise_holder - pts[left].s_hat) / (0.0 - pts[left].sigma);
  out.chirp = -(pts[1].s_hat - pts[0].s_hat) / (pts[1].sigma - pts[0].sigma);
  return out;
}

LinearCheckReport check_linear(const CoefficientField& field, double alpha, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw Error(Errc::GammaOutOfRange, "gamma must lie in [0, 1), got " + format_double(gamma));
  }
  LinearCheckReport report;
  report.alpha = alpha;
  report.gamma = gamma;

  const int top = field.j_max();
  const int j_lo = std::max(1, top / 2);
  constexpr double kMultipliers[] = {-10.0, -1.0, 0.0, 1.0, 10.0};
  double terminal_cond_i = kNegInf;

  for (int j = 0; j <= top; ++j) {
    const double jd = j;
    double cond_i = kNegInf;
    bool have_best = false;
    TrajectoryPoint best;
    for (std::size_t i = 0; i < field.level_size(j); ++i) {
      const double lm = field.log2_at(j, i);
      if (lm == kNegInf) continue;
      const std::int64_t k = field.k_at(j, i);
      const double log2_lambda = log2_1p(field.offset(j, k)) - jd * gamma;
      const double log2_c = lm + jd * alpha;
      if (!std::isfinite(log2_lambda) || !std::isfinite(log2_c)) {
        ++report.support_violations;
        continue;
      }
      if (j < j_lo || j == 0) continue;
      for (double mult : kMultipliers) cond_i = std::max(cond_i, (log2_c + mult * log2_lambda) / jd);
      const TrajectoryPoint p{j, k, log2_c / jd, log2_lambda / jd};
      if (!have_best || p.log2c_over_j > best.log2c_over_j ||
          (p.log2c_over_j == best.log2c_over_j &&
           std::fabs(p.log2lambda_over_j) < std::fabs(best.log2lambda_over_j))) {
        best = p;
        have_best = true;
      }
    }
    if (j < j_lo || j == 0) continue;
    // Zero entries take λ = 2^j, C = 2^{-j²}: (−j² + m j)/j = m − j.
    if (static_cast<std::int64_t>(field.level_size(j)) < domain_count(field, j)) {
      cond_i = std::max(cond_i, 10.0 - jd);
    }
    if (have_best) report.cond_ii_best_trajectory.push_back(best);
    if (j == top) terminal_cond_i = cond_i;
  }
  report.cond_i_surrogate = terminal_cond_i;

  report.pass = true;
  if (report.support_violations > 0) {
    report.pass = false;
    report.reasons.push_back(std::to_string(report.support_violations) +
                             " nonzero entries have non-finite reconstructed weights");
  }
  if (report.cond_i_surrogate > kCheckThreshold) {
    report.pass = false;
    report.reasons.push_back("condition (i) surrogate " + format_double(report.cond_i_surrogate, 6) +
                             " exceeds 0.05 at j=" + std::to_string(top));
  }
  if (report.cond_ii_best_trajectory.empty()) {
    report.pass = false;
    report.reasons.push_back("no nonzero trajectory");
  } else {
    const TrajectoryPoint& last = report.cond_ii_best_trajectory.back();
    const double mag = std::max(std::fabs(last.log2c_over_j), std::fabs(last.log2lambda_over_j));
    if (mag > kCheckThreshold) {
      report.pass = false;
      report.reasons.push_back("trajectory at j=" + std::to_string(last.j) + " has magnitude " +
                               format_double(mag, 6) + " > 0.05");
    }
  }
  return report;
}

double compare(const FrontierCurve& curve, const EstimatedFrontier& ef) {
  double worst = 0.0;
  for (const auto& p : ef.points) {
    if (std::isfinite(p.s_hat)) worst = std::max(worst, std::fabs(p.s_hat - curve.value(p.sigma)));
  }
  return worst;
}

}  // namespace twoml
