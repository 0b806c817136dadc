#include "twoml/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "twoml/error.hpp"
#include "twoml/numeric.hpp"

namespace twoml {

namespace {

double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct DescriptorSpec {
  Family family;
  const char* first;
  const char* second;
};

constexpr DescriptorSpec kSpecs[] = {
    {Family::Linear, "alpha", "gamma"},
    {Family::ExpConcave, "sinf", "lam"},
    {Family::SoftplusConcave, "c", "beta"},
};

const DescriptorSpec& spec_for(Family family) {
  for (const auto& s : kSpecs) {
    if (s.family == family) return s;
  }
  return kSpecs[0];
}

}  // namespace

const char* family_name(Family family) noexcept {
  switch (family) {
    case Family::Linear: return "linear";
    case Family::ExpConcave: return "exp";
    case Family::SoftplusConcave: return "softplus";
  }
  return "unknown";
}

bool RatioImage::contains(double rho) const noexcept {
  if (degenerate()) return rho == lo;
  const bool above = lo_open ? rho > lo : rho >= lo;
  const bool below = hi_open ? rho < hi : rho <= hi;
  return above && below;
}

FrontierCurve FrontierCurve::linear(double alpha, double gamma) {
  if (!std::isfinite(alpha)) throw Error(Errc::InvalidArgument, "alpha must be finite");
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw Error(Errc::GammaOutOfRange, "gamma must lie in [0, 1), got " + format_double(gamma));
  }
  return FrontierCurve(Family::Linear, alpha, gamma);
}

FrontierCurve FrontierCurve::exp_concave(double s_inf, double lam) {
  if (!std::isfinite(s_inf)) throw Error(Errc::InvalidArgument, "sinf must be finite");
  if (!(lam > 0.0) || !std::isfinite(lam)) {
    throw Error(Errc::InvalidArgument, "lam must be positive, got " + format_double(lam));
  }
  return FrontierCurve(Family::ExpConcave, s_inf, lam);
}

FrontierCurve FrontierCurve::softplus_concave(double c, double beta) {
  if (!std::isfinite(c)) throw Error(Errc::InvalidArgument, "c must be finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(Errc::InvalidArgument, "beta must be positive, got " + format_double(beta));
  }
  return FrontierCurve(Family::SoftplusConcave, c, beta);
}

FrontierCurve FrontierCurve::parse(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::BadDescriptor, "expected '<family>:<key>=<value>,...', got '" +
                                         std::string(descriptor) + "'");
  }
  const std::string_view name = descriptor.substr(0, colon);
  const DescriptorSpec* spec = nullptr;
  for (const auto& s : kSpecs) {
    if (name == family_name(s.family)) spec = &s;
  }
  if (spec == nullptr) {
    throw Error(Errc::BadDescriptor, "unknown curve family '" + std::string(name) + "'");
  }

  std::map<std::string, double, std::less<>> values;
  std::string_view rest = descriptor.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    const std::string key(item.substr(0, eq));
    if (key != spec->first && key != spec->second) {
      throw Error(Errc::BadDescriptor,
                  "unknown key '" + key + "' for family '" + std::string(name) + "'");
    }
    if (eq == std::string_view::npos) {
      throw Error(Errc::BadDescriptor, "key '" + key + "' has no value");
    }
    const auto parsed = parse_double(item.substr(eq + 1));
    if (!parsed || !std::isfinite(*parsed)) {
      throw Error(Errc::BadDescriptor, "invalid value '" + std::string(item.substr(eq + 1)) +
                                           "' for key '" + key + "'");
    }
    if (!values.emplace(key, *parsed).second) {
      throw Error(Errc::BadDescriptor, "duplicate key '" + key + "'");
    }
  }
  for (const char* key : {spec->first, spec->second}) {
    if (values.find(key) == values.end()) {
      throw Error(Errc::BadDescriptor, std::string("missing key '") + key + "'");
    }
  }

  const double p0 = values.find(spec->first)->second;
  const double p1 = values.find(spec->second)->second;
  switch (spec->family) {
    case Family::Linear:
      if (!(p1 >= 0.0 && p1 < 1.0)) {
        throw Error(Errc::BadDescriptor, "key 'gamma' must lie in [0, 1)");
      }
      return linear(p0, p1);
    case Family::ExpConcave:
      if (!(p1 > 0.0)) throw Error(Errc::BadDescriptor, "key 'lam' must be positive");
      return exp_concave(p0, p1);
    case Family::SoftplusConcave:
      if (!(p1 > 0.0)) throw Error(Errc::BadDescriptor, "key 'beta' must be positive");
      return softplus_concave(p0, p1);
  }
  throw Error(Errc::BadDescriptor, "unreachable family");
}

std::string FrontierCurve::descriptor() const {
  const auto& spec = spec_for(family_);
  return std::string(family_name(family_)) + ":" + spec.first + "=" + format_double(p0_) + "," +
         spec.second + "=" + format_double(p1_);
}

double FrontierCurve::value(double sigma) const noexcept {
  switch (family_) {
    case Family::Linear: return p0_ + p1_ / (1.0 - p1_) * (p0_ - sigma);
    case Family::ExpConcave: return p0_ - std::exp(p1_ * sigma);
    case Family::SoftplusConcave: return p0_ - softplus(p1_ * sigma) / p1_;
  }
  return 0.0;
}

double FrontierCurve::slope(double sigma) const noexcept {
  switch (family_) {
    case Family::Linear: return -p1_ / (1.0 - p1_);
    case Family::ExpConcave: return -p1_ * std::exp(p1_ * sigma);
    case Family::SoftplusConcave: return -sigmoid(p1_ * sigma);
  }
  return 0.0;
}

double FrontierCurve::slope_ratio(double sigma) const noexcept {
  switch (family_) {
    case Family::Linear: return p1_;
    case Family::ExpConcave:
      return std::min(sigmoid(p1_ * sigma + std::log(p1_)), std::nextafter(1.0, 0.0));
    case Family::SoftplusConcave: {
      const double s = sigmoid(p1_ * sigma);
      return s / (1.0 + s);
    }
  }
  return 0.0;
}

RatioImage FrontierCurve::slope_ratio_image() const noexcept {
  switch (family_) {
    case Family::Linear: return {p1_, p1_, false, false};
    case Family::ExpConcave: return {0.0, 1.0, true, true};
    case Family::SoftplusConcave: return {0.0, 0.5, true, true};
  }
  return {};
}

double FrontierCurve::invert_slope_ratio(double rho) const {
  if (is_linear()) {
    throw Error(Errc::LinearCurveNotInvertible, "a linear curve has a constant slope ratio");
  }
  if (!slope_ratio_image().interior(rho)) {
    throw Error(Errc::RatioOutOfImage, "slope ratio " + format_double(rho) +
                                           " outside the image of " + descriptor());
  }
  if (family_ == Family::ExpConcave) {
    return (std::log(rho) - std::log1p(-rho) - std::log(p1_)) / p1_;
  }
  return (std::log(rho) - std::log1p(-2.0 * rho)) / p1_;
}

Asymptote FrontierCurve::left_asymptote() const noexcept {
  switch (family_) {
    case Family::Linear: {
      const double g = p1_ / (1.0 - p1_);
      return {-g, p0_ * (1.0 + g)};
    }
    case Family::ExpConcave:
    case Family::SoftplusConcave: return {0.0, p0_};
  }
  return {};
}

std::optional<Asymptote> FrontierCurve::right_asymptote() const noexcept {
  switch (family_) {
    case Family::Linear: return left_asymptote();
    case Family::ExpConcave: return std::nullopt;
    case Family::SoftplusConcave: return Asymptote{-1.0, p0_};
  }
  return std::nullopt;
}

double invert_slope_ratio_bisect(const FrontierCurve& curve, double rho, double tol) {
  if (curve.is_linear()) {
    throw Error(Errc::LinearCurveNotInvertible, "a linear curve has a constant slope ratio");
  }
  if (!curve.slope_ratio_image().interior(rho)) {
    throw Error(Errc::RatioOutOfImage, "slope ratio " + format_double(rho) + " outside the image");
  }
  return bracket_and_bisect([&](double s) { return curve.slope_ratio(s) - rho; }, -1.0, 1.0, tol);
}

RegularityExponents exponents(const FrontierCurve& curve) {
  RegularityExponents out;
  out.pointwise_holder = curve.value(0.0);
  if (curve.is_linear()) {
    out.local_holder = curve.alpha();
  } else {
    out.local_holder = bracket_and_bisect(
        [&](double s) { return curve.value(s) - s; }, -1.0, 1.0, 1e-13);
  }
  const Asymptote left = curve.left_asymptote();
  out.chirp = 0.0 - left.slope;
  out.oscillation = 0.0 - curve.slope(0.0);
  out.weak_scaling = left.slope == 0.0 ? left.intercept : kPosInf;
  return out;
}

}  // namespace twoml
