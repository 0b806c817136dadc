#pragma once

#include <string>
#include <vector>

#include "twoml/field.hpp"
#include "twoml/frontier.hpp"
#include "twoml/weights.hpp"

namespace twoml {

enum class OffIndexPolicy { EqualityEverywhere, ZeroOffIndex };

/// log2 of C · inf_σ 2^{-jS(σ)} ((1 + offset)/λ)^{S(σ)−σ} at one site; -inf for a zero coefficient.
double general_log2_coefficient(const FrontierCurve& curve, const WeightScheme& scheme,
                                const Site& site);

/// Coefficients realizing a strictly concave frontier at x0 for every (j, k) in range, or only
/// on the index set with `ZeroOffIndex`. Zero coefficients are not stored.
CoefficientField synth_general(const FrontierCurve& curve, const WeightScheme& scheme, double x0,
                               int j_max,
                               OffIndexPolicy policy = OffIndexPolicy::EqualityEverywhere);

/// Coefficients realizing the line S(σ) = α + γ/(1−γ)(α − σ).
///
/// With unit weights each level keeps the position(s) whose 1 + offset is nearest to 2^{jγ} in
/// log scale, one above and one below 2^j x0, folding the mismatch into λ; the value there is
/// 2^{-jα}. Other schemes keep the positions where 1 + offset = λ 2^{jγ} holds.
CoefficientField synth_linear(double alpha, double gamma, const WeightScheme& scheme, double x0,
                              int j_max);

struct ConditionLevel {
  int j = 0;
  double cond_i = 0.0;          ///< max over sampled sites and C of (log2 C + C log2 λ)/j
  double index_log2c = 0.0;     ///< (log2 C)/j on the index set
  double index_log2lambda = 0.0;  ///< (log2 λ)/j on the index set
};

struct ConditionReport {
  std::vector<ConditionLevel> trajectory;  ///< levels j_max/2 .. j_max
  double cond_i_terminal = 0.0;
  double cond_i_window_max = 0.0;
  double index_terminal = 0.0;  ///< larger magnitude of the two index trajectories at j_max
  bool pass = false;
  std::vector<std::string> reasons;
};

/// Finite-level surrogates of the asymptotic weight conditions. Heuristic: PASS when the
/// surrogates at j_max are within 0.05. Levels wider than 2^12 are sampled, not enumerated.
ConditionReport condition_check(const WeightScheme& scheme, const FrontierCurve& curve, double x0,
                                int j_max);

inline constexpr double kConditionThreshold = 0.05;

}  // namespace twoml
