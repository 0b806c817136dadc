#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twoml/field.hpp"
#include "twoml/frontier.hpp"
#include "twoml/weights.hpp"

namespace twoml {

/// Sign convention of the conjugate g*.
enum class LegendreConvention {
  InfLinearMinusG,  ///< g*(ρ) = inf_{s′} [ρ s′ − g(s′)]
  SupGMinusLinear,  ///< g*(ρ) = sup_{s′} [g(s′) − ρ s′]
};

/// The frontier seen in the (s′, σ) plane: σ = g(s′) with σ − S(σ) = s′.
///
/// Sampled on a uniform σ grid; s′ values between samples are served by cubic Hermite
/// interpolation with the exact slope g′ = 1/(1 − S′), and by bisection outside the grid.
class LVSFrontier {
 public:
  LVSFrontier(FrontierCurve curve, double sigma_half_width = 40.0, double sigma_step = 0.01);

  const FrontierCurve& curve() const noexcept { return curve_; }
  double g(double s_prime) const;
  /// g′ at the point whose σ is given.
  double slope_at_sigma(double sigma) const { return 1.0 - curve_.slope_ratio(sigma); }
  double slope_at_zero() const { return slope_at_sigma(g(0.0)); }
  /// Closure of the range of g′.
  std::pair<double, double> slope_range() const noexcept;

  const std::vector<double>& sigmas() const noexcept { return sigmas_; }
  const std::vector<double>& s_primes() const noexcept { return s_primes_; }

  LegendreConvention convention() const noexcept { return convention_; }
  void set_convention(LegendreConvention c) noexcept { convention_ = c; }

 private:
  FrontierCurve curve_;
  std::vector<double> sigmas_;
  std::vector<double> s_primes_;
  LegendreConvention convention_ = LegendreConvention::InfLinearMinusG;
};

LVSFrontier g_from_curve(const FrontierCurve& curve);

/// Conjugate g*(ρ) for ρ ∈ [0, 1] under the frontier's convention; may be ±inf.
/// Values below −10^4 are reported as −inf.
double legendre(const LVSFrontier& gf, double rho);

/// Plain minimum of ρ s′ − g(s′) over the stored samples, default convention, no refinement.
double legendre_scan(const LVSFrontier& gf, double rho);

struct RhoInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

/// {ρ ∈ [0, 1] : k = floor(2^{j(1−ρ)})}, closed.
RhoInterval lvs_rho_interval(int j, std::int64_t k);

struct LVSExponent {
  double beta = 0.0;       ///< min over the ρ interval of min{j, −g*(ρ)}
  double rho_star = 0.0;   ///< minimizing ρ nearest the middle of the minimizing set
  bool empty = true;       ///< empty ρ interval: the coefficient is 0
};

/// β_{j,k} on a grid of 64 interior points plus the interval ends.
LVSExponent lvs_exponent(const LVSFrontier& gf, int j, std::int64_t k);

/// C and λ chosen so the general formula reproduces 2^{-j β_{j,k}} at x0 = 0; unit weights at
/// j = 0, k <= 0 and empty intervals.
WeightScheme lvs_scheme(const LVSFrontier& gf);

struct CalibrationReport {
  LegendreConvention chosen = LegendreConvention::InfLinearMinusG;
  double default_error = 0.0;  ///< max relative log2 mismatch with the default convention
  double flipped_error = 0.0;  ///< same with the flipped convention; NaN when not tried
  bool consistent = false;
};

/// Relative log2 mismatch max |a − b| / max(1, |b|) between the β formula and the general
/// formula with `lvs_scheme` weights, over 1 <= j <= j_check and 1 <= k < 2^j.
double lvs_consistency_error(const LVSFrontier& gf, int j_check);

/// Keeps the default convention when it is consistent to 1e−6, otherwise flips it once.
CalibrationReport calibrate_convention(LVSFrontier& gf, int j_check = 6);

/// c_{j,k} = 2^{-j β_{j,k}} for 1 <= j <= j_max, 1 <= k < 2^j, at x0 = 0. Calibrates a copy of
/// `gf` first. IncompatibleCurve unless g(0) > 0.
CoefficientField synth_lvs(const LVSFrontier& gf, int j_max);

}  // namespace twoml
