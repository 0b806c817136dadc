#include "twoml/weights.hpp"

#include <cmath>

#include "twoml/error.hpp"

namespace twoml {

namespace {

double checked(double v, const char* what, const Site& site) {
  if (!std::isfinite(v)) {
    throw Error(Errc::InvalidScheme, std::string(what) + " is not a positive finite weight at j=" +
                                         std::to_string(site.j));
  }
  return v;
}

}  // namespace

const char* scheme_kind_name(SchemeKind kind) noexcept {
  switch (kind) {
    case SchemeKind::Unit: return "unit";
    case SchemeKind::MeyerStyle: return "meyer";
    case SchemeKind::LVSStyle: return "lvs";
    case SchemeKind::Custom: return "custom";
  }
  return "unknown";
}

WeightScheme::WeightScheme(SchemeKind kind, Rule log2_c, Rule log2_lambda, std::string tag)
    : kind_(kind), log2_c_(std::move(log2_c)), log2_lambda_(std::move(log2_lambda)),
      tag_(std::move(tag)) {
  if (!log2_c_ || !log2_lambda_) throw Error(Errc::InvalidScheme, "weight rules must be callable");
}

WeightScheme WeightScheme::unit() {
  const Rule zero = [](const Site&) { return 0.0; };
  return WeightScheme(SchemeKind::Unit, zero, zero, "unit");
}

WeightScheme WeightScheme::custom(Rule log2_c, Rule log2_lambda, std::string tag) {
  return WeightScheme(SchemeKind::Custom, std::move(log2_c), std::move(log2_lambda),
                      std::move(tag));
}

WeightScheme WeightScheme::make(SchemeKind kind, Rule log2_c, Rule log2_lambda, std::string tag) {
  return WeightScheme(kind, std::move(log2_c), std::move(log2_lambda), std::move(tag));
}

double WeightScheme::log2_c(const Site& site) const {
  if (kind_ == SchemeKind::Unit) return 0.0;
  return checked(log2_c_(site), "C", site);
}

double WeightScheme::log2_lambda(const Site& site) const {
  if (kind_ == SchemeKind::Unit) return 0.0;
  return checked(log2_lambda_(site), "lambda", site);
}

}  // namespace twoml
