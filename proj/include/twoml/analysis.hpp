#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twoml/field.hpp"
#include "twoml/frontier.hpp"

namespace twoml {

/// Best constant C with |c_{j,k}| <= C 2^{-js} (1 + |k − 2^j x0|)^{-s′} over the stored entries.
/// Returns +inf when the per-level supremum is still growing at the top levels (least-squares
/// slope above 0.01 per level over the upper half) or exceeds 2^60 at the last level.
double membership_margin(const CoefficientField& field, double s, double s_prime);

struct FrontierPoint {
  double sigma = 0.0;
  double s_hat = 0.0;  ///< after the isotonic clip; +inf without constraints
  double raw = 0.0;    ///< before the clip
  int argmin_j = -1;   ///< -1 when no entry constrained this σ
  std::int64_t argmin_k = 0;
};

struct EstimatedFrontier {
  std::vector<FrontierPoint> points;
  int j0 = 0;
  int j1 = 0;
  std::size_t skipped_degenerate = 0;  ///< entries with j − L <= 0.5 inside the window
};

/// Ŝ(σ) = min over levels j0..j1 and nonzero entries of (−log2|c| − σL)/(j − L), with
/// L = log2(1 + |k − 2^j x0|), followed by a running-minimum clip so Ŝ is non-increasing.
EstimatedFrontier estimate_frontier(const CoefficientField& field,
                                    const std::vector<double>& sigma_grid, int j0, int j1);

/// Default window: upper half of the field's levels.
EstimatedFrontier estimate_frontier(const CoefficientField& field,
                                    const std::vector<double>& sigma_grid);

/// Exponents read off a sampled frontier. GridTooNarrow unless the grid brackets σ = 0 and the
/// fixed point Ŝ(σ) = σ.
RegularityExponents estimate_exponents(const EstimatedFrontier& ef);

struct TrajectoryPoint {
  int j = 0;
  std::int64_t k = 0;
  double log2c_over_j = 0.0;
  double log2lambda_over_j = 0.0;
};

struct LinearCheckReport {
  double alpha = 0.0;
  double gamma = 0.0;
  std::size_t support_violations = 0;  ///< nonzero entries with non-finite reconstructed weights
  double cond_i_surrogate = 0.0;
  std::vector<TrajectoryPoint> cond_ii_best_trajectory;
  bool pass = false;
  std::vector<std::string> reasons;
};

/// Reconstructs the weights a field would need to realize the line (α, γ) and checks the two
/// weight conditions on finite-level surrogates (threshold 0.05 at the top level).
LinearCheckReport check_linear(const CoefficientField& field, double alpha, double gamma);

/// max |Ŝ(σ) − S(σ)| over points with finite Ŝ; 0 when there are none.
double compare(const FrontierCurve& curve, const EstimatedFrontier& ef);

}  // namespace twoml
