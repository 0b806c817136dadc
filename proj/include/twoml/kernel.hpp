#pragma once

#include <optional>
#include <vector>

#include "twoml/frontier.hpp"

namespace twoml {

/// How the infimum of 2^{-j S(σ)} b^{S(σ)−σ} over σ was reached.
enum class InfCase { UnitPoint, Interior, LimitPlus, LimitMinus, Zero };

const char* inf_case_name(InfCase c) noexcept;

struct InfResult {
  double log2_value = 0.0;  ///< kNegInf when the infimum is 0
  InfCase kase = InfCase::Zero;
  std::optional<double> sigma_star;  ///< minimizer, Interior only
};

/// inf over σ of a^{S(σ)} b^{S(σ)−σ} for the line S(σ) = Mσ + d: (ab)^d when (ab)^M = b, else 0.
double inf_linear(double M, double d, double a, double b);

/// log2 of inf_σ 2^{-j S(σ)} b^{S(σ)−σ} for a strictly concave curve, with log2_b = log2 b.
InfResult log2_inf(const FrontierCurve& curve, int j, double log2_b);

/// Objective log2(a^{S} b^{S−σ}) at one σ.
double log2_objective(const FrontierCurve& curve, double log2_a, double log2_b, double sigma);

/// Grid minimum of the log2 objective over [lo, hi] with the given step; optionally refined by
/// golden-section search around the best grid point.
double brute_force_log2_inf(const FrontierCurve& curve, double log2_a, double log2_b, double lo,
                            double hi, double step, bool refine = true);

/// Linear-domain form of `brute_force_log2_inf`.
double brute_force_inf(const FrontierCurve& curve, double a, double b, double lo, double hi,
                       double step, bool refine = true);

/// max over the grid of [S′(σ)(σ0−σ) + S(σ) − S(σ0) + eps] / (S′(σ) − 1).
double tangent_gap_sup(const FrontierCurve& curve, double sigma0, double eps,
                       const std::vector<double>& grid);

/// Uniform grid lo, lo+step, ... up to hi (inclusive when hi is reached up to rounding).
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace twoml
