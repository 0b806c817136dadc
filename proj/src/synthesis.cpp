#include "twoml/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "twoml/error.hpp"
#include "twoml/indexing.hpp"
#include "twoml/kernel.hpp"
#include "twoml/numeric.hpp"

namespace twoml {

namespace {

Site make_site(int j, double k, double x0) {
  return {j, k, std::fabs(k - std::ldexp(x0, j))};
}

CoefficientField empty_field(double x0, int j_max, std::string curve, std::string scheme) {
  CoefficientField field(x0, j_max);
  field.set_curve_descriptor(std::move(curve));
  field.set_scheme_tag(std::move(scheme));
  return field;
}

// Offsets whose positions are visited when a level is too wide to enumerate.
std::vector<double> sampled_offsets(int j) {
  std::vector<double> out;
  if (j <= 12) {
    const int width = 1 << j;
    for (int n = 0; n < width; ++n) out.push_back(n);
    return out;
  }
  for (int n = 0; n <= 64; ++n) out.push_back(n);
  for (int i = 0; i <= 256; ++i) out.push_back(std::floor(std::exp2(j * (i / 256.0))));
  out.push_back(std::floor(std::nextafter(std::ldexp(1.0, j), 0.0)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double general_log2_coefficient(const FrontierCurve& curve, const WeightScheme& scheme,
                                const Site& site) {
  const double log2_c = scheme.log2_c(site);
  const double log2_b = log2_1p(site.offset) - scheme.log2_lambda(site);
  const InfResult inf = log2_inf(curve, site.j, log2_b);
  if (inf.log2_value == kNegInf) return kNegInf;
  return log2_c + inf.log2_value;
}

CoefficientField synth_general(const FrontierCurve& curve, const WeightScheme& scheme, double x0,
                               int j_max, OffIndexPolicy policy) {
  if (curve.is_linear()) {
    throw Error(Errc::LinearCurveRejected, "linear frontiers are synthesized by synth_linear");
  }
  CoefficientField field = empty_field(x0, j_max, curve.descriptor(), scheme.tag());

  auto emit = [&](int j, std::int64_t k) {
    const double v = general_log2_coefficient(curve, scheme, make_site(j, static_cast<double>(k), x0));
    if (v != kNegInf) field.set(j, k, v);
  };

  if (policy == OffIndexPolicy::ZeroOffIndex) {
    for (const IndexEntry& e : build_index_set(curve, x0, j_max).entries) emit(e.j, e.k);
    return field;
  }
  for (int j = 0; j <= j_max; ++j) {
    const double centre = std::ldexp(x0, j);
    const double width = std::ldexp(1.0, j);
    const auto k_lo = static_cast<std::int64_t>(std::floor(centre - width)) + 1;
    const auto k_hi = static_cast<std::int64_t>(std::ceil(centre + width)) - 1;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      if (field.in_domain(j, k)) emit(j, k);
    }
  }
  return field;
}

CoefficientField synth_linear(double alpha, double gamma, const WeightScheme& scheme, double x0,
                              int j_max) {
  const FrontierCurve line = FrontierCurve::linear(alpha, gamma);
  CoefficientField field = empty_field(x0, j_max, line.descriptor(), scheme.tag());

  for (int j = 0; j <= j_max; ++j) {
    const double centre = std::ldexp(x0, j);
    const double target = j * gamma;
    const double level_value = -j * alpha;

    if (scheme.kind() != SchemeKind::Unit) {
      const double width = std::ldexp(1.0, j);
      const auto k_lo = static_cast<std::int64_t>(std::floor(centre - width)) + 1;
      const auto k_hi = static_cast<std::int64_t>(std::ceil(centre + width)) - 1;
      for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        if (!field.in_domain(j, k)) continue;
        const Site site = make_site(j, static_cast<double>(k), x0);
        const double mismatch = log2_1p(site.offset) - scheme.log2_lambda(site) - target;
        if (std::fabs(mismatch) <= 1e-12 * std::max(1.0, target)) {
          field.set(j, k, scheme.log2_c(site) + level_value);
        }
      }
      continue;
    }

    const double reach = std::exp2(target) - 1.0;
    std::set<std::int64_t> chosen;
    for (const double side : {1.0, -1.0}) {
      const double base = centre + side * reach;
      double best_err = kPosInf;
      double best_offset = -1.0;
      std::int64_t best_k = 0;
      for (const double cand : {std::floor(base), std::ceil(base)}) {
        if (side * (cand - centre) < 0.0) continue;
        const auto k = static_cast<std::int64_t>(cand);
        if (!field.in_domain(j, k)) continue;
        const double off = field.offset(j, k);
        const double err = std::fabs(log2_1p(off) - target);
        if (err < best_err || (err == best_err && off > best_offset)) {
          best_err = err;
          best_offset = off;
          best_k = k;
        }
      }
      if (best_offset >= 0.0) chosen.insert(best_k);
    }
    for (std::int64_t k : chosen) field.set(j, k, level_value);
  }
  return field;
}

ConditionReport condition_check(const WeightScheme& scheme, const FrontierCurve& curve, double x0,
                                int j_max) {
  if (j_max < 0 || j_max > 1000) throw Error(Errc::OutOfRange, "j_max must lie in [0, 1000]");
  ConditionReport report;
  const int j_lo = std::max(1, j_max / 2);
  constexpr double kMultipliers[] = {-10.0, -1.0, 0.0, 1.0, 10.0};

  for (int j = j_lo; j <= j_max; ++j) {
    ConditionLevel level;
    level.j = j;
    level.cond_i = kNegInf;
    std::set<double> visited;
    for (double n : sampled_offsets(j)) {
      for (double k : positions_with_offset_floor(j, x0, n)) {
        if (!visited.insert(k).second) continue;
        const Site site = make_site(j, k, x0);
        const double lc = scheme.log2_c(site);
        const double ll = scheme.log2_lambda(site);
        for (double mult : kMultipliers) level.cond_i = std::max(level.cond_i, (lc + mult * ll) / j);
      }
    }
    const double r = r_sequence(curve, level_class(j));
    for (double k : positions_with_offset_floor(j, x0, std::floor(std::exp2(j * r)))) {
      const Site site = make_site(j, k, x0);
      const double lc = scheme.log2_c(site) / j;
      const double ll = scheme.log2_lambda(site) / j;
      if (std::fabs(lc) >= std::fabs(level.index_log2c)) level.index_log2c = lc;
      if (std::fabs(ll) >= std::fabs(level.index_log2lambda)) level.index_log2lambda = ll;
    }
    report.trajectory.push_back(level);
  }

  if (report.trajectory.empty()) {
    report.pass = true;
    report.reasons.push_back("no positive levels to check");
    return report;
  }
  const ConditionLevel& last = report.trajectory.back();
  report.cond_i_terminal = last.cond_i;
  report.cond_i_window_max = kNegInf;
  for (const auto& lv : report.trajectory) {
    report.cond_i_window_max = std::max(report.cond_i_window_max, lv.cond_i);
  }
  report.index_terminal = std::max(std::fabs(last.index_log2c), std::fabs(last.index_log2lambda));

  report.pass = true;
  if (report.cond_i_terminal > kConditionThreshold) {
    report.pass = false;
    report.reasons.push_back("weight growth surrogate " + format_double(report.cond_i_terminal, 6) +
                             " exceeds 0.05 at j=" + std::to_string(last.j));
  }
  if (report.index_terminal > kConditionThreshold) {
    report.pass = false;
    report.reasons.push_back("index-set trajectory magnitude " +
                             format_double(report.index_terminal, 6) + " exceeds 0.05 at j=" +
                             std::to_string(last.j));
  }
  return report;
}

}  // namespace twoml
