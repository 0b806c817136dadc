#include "twoml/meyer.hpp"

#include <cmath>

#include "twoml/error.hpp"
#include "twoml/indexing.hpp"
#include "twoml/numeric.hpp"

namespace twoml {

namespace {

void require_compatible(const FrontierCurve& curve) {
  if (curve.is_linear() || curve.slope_ratio_image().hi > 0.5) {
    throw Error(Errc::IncompatibleCurve,
                "the Meyer construction needs a strictly concave curve with slopes in (-1, 0), got " +
                    curve.descriptor());
  }
}

// Position of the class-m entry at level j.
double meyer_position(int j, double x0, double p) {
  return upper_position(j, x0, std::floor(std::exp2(j * p)));
}

}  // namespace

double meyer_tau(const FrontierCurve& curve, double p) {
  require_compatible(curve);
  if (p == 0.0) return curve.left_asymptote().intercept;
  const double sigma = curve.invert_slope_ratio(p);
  return (1.0 - p) * curve.value(sigma) + p * sigma;
}

MeyerParams meyer_params(const FrontierCurve& curve, int m) {
  require_compatible(curve);
  MeyerParams out;
  out.m = m;
  out.p = r_sequence(curve, m);
  out.sigma = curve.invert_slope_ratio(out.p);
  out.tau = (1.0 - out.p) * curve.value(out.sigma) + out.p * out.sigma;
  return out;
}

WeightScheme meyer_scheme(const FrontierCurve& curve, double x0) {
  require_compatible(curve);
  auto log2_lambda = [curve, x0](const Site& site) {
    const double p = r_sequence(curve, level_class(site.j));
    if (site.k != meyer_position(site.j, x0, p)) return 0.0;
    return log2_1p(site.offset) - site.j * p;
  };
  return WeightScheme::make(SchemeKind::MeyerStyle, [](const Site&) { return 0.0; }, log2_lambda,
                            "meyer");
}

CoefficientField synth_meyer(const FrontierCurve& curve, double x0, int j_max) {
  require_compatible(curve);
  CoefficientField field(x0, j_max);
  field.set_curve_descriptor(curve.descriptor());
  field.set_scheme_tag("meyer");
  for (int j = 0; j <= j_max; ++j) {
    const MeyerParams params = meyer_params(curve, level_class(j));
    const auto k = static_cast<std::int64_t>(meyer_position(j, x0, params.p));
    if (field.in_domain(j, k)) field.set(j, k, -j * params.tau);
  }
  return field;
}

}  // namespace twoml
