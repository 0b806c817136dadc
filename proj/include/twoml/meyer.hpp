#pragma once

#include "twoml/field.hpp"
#include "twoml/frontier.hpp"
#include "twoml/weights.hpp"

namespace twoml {

struct MeyerParams {
  int m = 0;
  double p = 0.0;      ///< slope ratio r_m
  double sigma = 0.0;  ///< slope-ratio preimage of p
  double tau = 0.0;    ///< level exponent: coefficients are 2^{-j tau}
};

/// Parameters of class m for a curve with slopes in (−1, 0). IncompatibleCurve otherwise.
MeyerParams meyer_params(const FrontierCurve& curve, int m);

/// (1 − p) S(σ_p) + p σ_p for a slope ratio p; p = 0 gives the left limit of S.
double meyer_tau(const FrontierCurve& curve, double p);

/// λ = (1 + offset)/2^{j p_m} at the class-m position of each level, 1 elsewhere; C = 1.
WeightScheme meyer_scheme(const FrontierCurve& curve, double x0);

/// 2^{-j tau_m} at the position k with k − 2^j x0 having integer part floor(2^{j p_m}), zero
/// elsewhere.
CoefficientField synth_meyer(const FrontierCurve& curve, double x0, int j_max);

}  // namespace twoml
