#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace twoml {

enum class Family { Linear, ExpConcave, SoftplusConcave };

const char* family_name(Family family) noexcept;

/// Interval of attainable slope ratios. A degenerate image (lo == hi) is a single closed point.
struct RatioImage {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = true;
  bool hi_open = true;

  bool degenerate() const noexcept { return lo == hi; }
  bool contains(double rho) const noexcept;
  /// Strict interior, ignoring the open/closed flags.
  bool interior(double rho) const noexcept { return rho > lo && rho < hi; }
};

/// Line S(σ) ≈ slope·σ + intercept approached as σ → ±∞.
struct Asymptote {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Decreasing frontier curve σ ↦ S(σ): a line, or one of two strictly concave families.
///
///   linear:   S = α + γ/(1−γ)·(α − σ),      γ ∈ [0, 1)
///   exp:      S = s_inf − exp(λσ),          λ > 0
///   softplus: S = c − ln(1 + exp(βσ))/β,    β > 0
class FrontierCurve {
 public:
  static FrontierCurve linear(double alpha, double gamma);
  static FrontierCurve exp_concave(double s_inf, double lam);
  static FrontierCurve softplus_concave(double c, double beta);

  /// Parses `linear:alpha=<f>,gamma=<f>`, `exp:sinf=<f>,lam=<f>` or `softplus:c=<f>,beta=<f>`.
  static FrontierCurve parse(std::string_view descriptor);
  std::string descriptor() const;

  Family family() const noexcept { return family_; }
  bool is_linear() const noexcept { return family_ == Family::Linear; }

  double value(double sigma) const noexcept;
  double slope(double sigma) const noexcept;
  /// S′/(S′ − 1), in [0, 1).
  double slope_ratio(double sigma) const noexcept;
  RatioImage slope_ratio_image() const noexcept;
  /// σ with slope_ratio(σ) = rho, for strictly concave curves.
  double invert_slope_ratio(double rho) const;

  /// Behaviour as σ → −∞ (always linear for the shipped families).
  Asymptote left_asymptote() const noexcept;
  /// Behaviour as σ → +∞; empty when S′ is unbounded there.
  std::optional<Asymptote> right_asymptote() const noexcept;

  // Linear
  double alpha() const noexcept { return p0_; }
  double gamma() const noexcept { return p1_; }
  // ExpConcave
  double s_inf() const noexcept { return p0_; }
  double lam() const noexcept { return p1_; }
  // SoftplusConcave
  double c() const noexcept { return p0_; }
  double beta() const noexcept { return p1_; }

  friend bool operator==(const FrontierCurve&, const FrontierCurve&) = default;

 private:
  FrontierCurve(Family family, double p0, double p1) : family_(family), p0_(p0), p1_(p1) {}

  Family family_;
  double p0_;
  double p1_;
};

/// Bisection route to the slope-ratio inverse; slower than `invert_slope_ratio`, kept as a
/// derivative-free cross-check and for tolerances tighter than the closed forms need.
double invert_slope_ratio_bisect(const FrontierCurve& curve, double rho, double tol = 1e-13);

struct RegularityExponents {
  double pointwise_holder = 0.0;
  double local_holder = 0.0;
  double chirp = 0.0;
  double oscillation = 0.0;
  double weak_scaling = 0.0;  ///< may be +inf
};

RegularityExponents exponents(const FrontierCurve& curve);

}  // namespace twoml
