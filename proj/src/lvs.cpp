#include "twoml/lvs.hpp"

#include <algorithm>
#include <cmath>

#include "twoml/error.hpp"
#include "twoml/numeric.hpp"
#include "twoml/synthesis.hpp"

namespace twoml {

namespace {

constexpr double kEndpointTol = 1e-12;
constexpr double kDivergenceFloor = -1e4;
constexpr int kInteriorPoints = 64;

double conjugate_objective(const FrontierCurve& curve, double rho, double sigma) {
  return rho * (sigma - curve.value(sigma)) - sigma;
}

// inf over σ of ρ(σ − S(σ)) − σ, i.e. the default-convention conjugate.
double default_conjugate(const LVSFrontier& gf, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw Error(Errc::RhoOutOfRange, "rho must lie in [0, 1], got " + format_double(rho));
  }
  const FrontierCurve& curve = gf.curve();
  const auto [lo, hi] = gf.slope_range();
  if (rho < lo - kEndpointTol || rho > hi + kEndpointTol) return kNegInf;

  // At an end of the slope range the objective is monotone and tends to −ρ·intercept along the
  // asymptote on the corresponding side (σ → −∞ for the largest slope).
  if (std::fabs(rho - hi) <= kEndpointTol) return -rho * curve.left_asymptote().intercept;
  if (std::fabs(rho - lo) <= kEndpointTol) {
    const auto right = curve.right_asymptote();
    return right ? -rho * right->intercept : kNegInf;
  }

  const auto& sig = gf.sigmas();
  const auto& sp = gf.s_primes();
  auto h = [&](std::size_t i) { return rho * sp[i] - sig[i]; };
  std::size_t a = 0;
  std::size_t b = sig.size() - 1;
  while (b - a > 2) {
    const std::size_t m1 = a + (b - a) / 3;
    const std::size_t m2 = b - (b - a) / 3;
    if (h(m1) < h(m2)) {
      b = m2;
    } else {
      a = m1;
    }
  }
  std::size_t best = a;
  for (std::size_t i = a; i <= b; ++i) {
    if (h(i) < h(best)) best = i;
  }
  double left = sig[best == 0 ? 0 : best - 1];
  double right = sig[std::min(best + 1, sig.size() - 1)];
  auto f = [&](double s) { return conjugate_objective(curve, rho, s); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = right - inv_phi * (right - left);
  double x2 = left + inv_phi * (right - left);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 <= f2) {
      right = x2;
      x2 = x1;
      f2 = f1;
      x1 = right - inv_phi * (right - left);
      f1 = f(x1);
    } else {
      left = x1;
      x1 = x2;
      f1 = f2;
      x2 = left + inv_phi * (right - left);
      f2 = f(x2);
    }
  }
  const double value = std::min({f1, f2, h(best)});
  return value < kDivergenceFloor ? kNegInf : value;
}

void require_positive_g0(const LVSFrontier& gf) {
  if (!(gf.g(0.0) > 0.0)) {
    throw Error(Errc::IncompatibleCurve, "the LVS construction needs g(0) > 0, got g(0) = " +
                                             format_double(gf.g(0.0)));
  }
}

}  // namespace

LVSFrontier::LVSFrontier(FrontierCurve curve, double sigma_half_width, double sigma_step)
    : curve_(std::move(curve)) {
  if (!(sigma_half_width > 0.0) || !(sigma_step > 0.0)) {
    throw Error(Errc::BadGrid, "sampling range and step must be positive");
  }
  const auto n = static_cast<std::size_t>(std::llround(2.0 * sigma_half_width / sigma_step)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma = -sigma_half_width + static_cast<double>(i) * sigma_step;
    const double sp = sigma - curve_.value(sigma);
    if (!std::isfinite(sp)) continue;
    sigmas_.push_back(sigma);
    s_primes_.push_back(sp);
  }
  if (sigmas_.size() < 3) throw Error(Errc::BadGrid, "too few finite samples of g");
}

double LVSFrontier::g(double s_prime) const {
  if (s_prime < s_primes_.front() || s_prime > s_primes_.back()) {
    return bracket_and_bisect([&](double s) { return s - curve_.value(s) - s_prime; }, -1.0, 1.0,
                              1e-13);
  }
  auto it = std::upper_bound(s_primes_.begin(), s_primes_.end(), s_prime);
  std::size_t i = it == s_primes_.end() ? s_primes_.size() - 2
                                        : static_cast<std::size_t>(it - s_primes_.begin()) - 1;
  const double h = s_primes_[i + 1] - s_primes_[i];
  const double t = (s_prime - s_primes_[i]) / h;
  const double y0 = sigmas_[i];
  const double y1 = sigmas_[i + 1];
  const double m0 = slope_at_sigma(y0) * h;
  const double m1 = slope_at_sigma(y1) * h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * m1;
}

std::pair<double, double> LVSFrontier::slope_range() const noexcept {
  const RatioImage image = curve_.slope_ratio_image();
  return {1.0 - image.hi, 1.0 - image.lo};
}

LVSFrontier g_from_curve(const FrontierCurve& curve) { return LVSFrontier(curve); }

double legendre(const LVSFrontier& gf, double rho) {
  const double value = default_conjugate(gf, rho);
  return gf.convention() == LegendreConvention::InfLinearMinusG ? value : -value;
}

double legendre_scan(const LVSFrontier& gf, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw Error(Errc::RhoOutOfRange, "rho must lie in [0, 1], got " + format_double(rho));
  }
  double best = kPosInf;
  for (std::size_t i = 0; i < gf.sigmas().size(); ++i) {
    best = std::min(best, rho * gf.s_primes()[i] - gf.sigmas()[i]);
  }
  return best;
}

RhoInterval lvs_rho_interval(int j, std::int64_t k) {
  RhoInterval out;
  if (j < 1 || k < 1) return out;
  const double jd = j;
  out.lo = std::max(0.0, 1.0 - std::log2(static_cast<double>(k) + 1.0) / jd);
  out.hi = std::min(1.0, 1.0 - std::log2(static_cast<double>(k)) / jd);
  out.empty = out.lo > out.hi;
  return out;
}

LVSExponent lvs_exponent(const LVSFrontier& gf, int j, std::int64_t k) {
  LVSExponent out;
  const RhoInterval iv = lvs_rho_interval(j, k);
  if (iv.empty) return out;
  out.empty = false;

  const int count = iv.lo == iv.hi ? 1 : kInteriorPoints + 2;
  std::vector<double> rhos(static_cast<std::size_t>(count));
  std::vector<double> chis(rhos.size());
  for (int i = 0; i < count; ++i) {
    const double rho = count == 1 ? iv.lo : iv.lo + (iv.hi - iv.lo) * i / (count - 1);
    rhos[static_cast<std::size_t>(i)] = rho;
    chis[static_cast<std::size_t>(i)] = std::min(static_cast<double>(j), -legendre(gf, rho));
  }
  out.beta = *std::min_element(chis.begin(), chis.end());
  std::size_t first = rhos.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (chis[i] == out.beta) {
      first = std::min(first, i);
      last = i;
    }
  }
  const double middle = 0.5 * (rhos[first] + rhos[last]);
  out.rho_star = rhos[first];
  for (std::size_t i = first; i <= last; ++i) {
    if (chis[i] == out.beta && std::fabs(rhos[i] - middle) < std::fabs(out.rho_star - middle)) {
      out.rho_star = rhos[i];
    }
  }
  return out;
}

WeightScheme lvs_scheme(const LVSFrontier& gf) {
  auto log2_c = [gf](const Site& site) {
    const auto k = static_cast<std::int64_t>(site.k);
    if (site.j < 1 || k < 1) return 0.0;
    const LVSExponent e = lvs_exponent(gf, site.j, k);
    if (e.empty) return 0.0;
    const double jd = site.j;
    const double conj = legendre(gf, e.rho_star);
    if (jd > -conj) return 0.0;
    if (std::isfinite(conj)) return -jd * conj - jd * jd;
    return -jd * legendre(gf, gf.slope_at_zero()) - jd * jd;
  };
  auto log2_lambda = [gf](const Site& site) {
    const auto k = static_cast<std::int64_t>(site.k);
    if (site.j < 1 || k < 1) return 0.0;
    const LVSExponent e = lvs_exponent(gf, site.j, k);
    if (e.empty) return 0.0;
    const double jd = site.j;
    const double conj = legendre(gf, e.rho_star);
    const double rho = std::isfinite(conj) ? e.rho_star : gf.slope_at_zero();
    return log2_1p(site.offset) - jd * (1.0 - rho);
  };
  return WeightScheme::make(SchemeKind::LVSStyle, log2_c, log2_lambda, "lvs");
}

double lvs_consistency_error(const LVSFrontier& gf, int j_check) {
  const WeightScheme scheme = lvs_scheme(gf);
  double worst = 0.0;
  for (int j = 1; j <= j_check; ++j) {
    const std::int64_t width = std::int64_t{1} << j;
    for (std::int64_t k = 1; k < width; ++k) {
      const LVSExponent e = lvs_exponent(gf, j, k);
      if (e.empty) continue;
      const double direct = -j * e.beta;
      const Site site{j, static_cast<double>(k), static_cast<double>(k)};
      const double general = general_log2_coefficient(gf.curve(), scheme, site);
      if (!std::isfinite(general)) return kPosInf;
      worst = std::max(worst, std::fabs(direct - general) / std::max(1.0, std::fabs(general)));
    }
  }
  return worst;
}

CalibrationReport calibrate_convention(LVSFrontier& gf, int j_check) {
  constexpr double kTol = 1e-6;
  CalibrationReport report;
  report.flipped_error = std::nan("");
  gf.set_convention(LegendreConvention::InfLinearMinusG);
  report.default_error = lvs_consistency_error(gf, j_check);
  if (report.default_error <= kTol) {
    report.consistent = true;
    return report;
  }
  gf.set_convention(LegendreConvention::SupGMinusLinear);
  report.flipped_error = lvs_consistency_error(gf, j_check);
  if (report.flipped_error <= kTol) {
    report.chosen = LegendreConvention::SupGMinusLinear;
    report.consistent = true;
    return report;
  }
  gf.set_convention(LegendreConvention::InfLinearMinusG);
  return report;
}

CoefficientField synth_lvs(const LVSFrontier& gf, int j_max) {
  require_positive_g0(gf);
  LVSFrontier calibrated = gf;
  if (j_max >= 1) calibrate_convention(calibrated, std::min(j_max, 6));

  CoefficientField field(0.0, j_max);
  field.set_curve_descriptor(gf.curve().descriptor());
  field.set_scheme_tag("lvs");
  for (int j = 1; j <= j_max; ++j) {
    const std::int64_t width = std::int64_t{1} << j;
    for (std::int64_t k = 1; k < width; ++k) {
      const LVSExponent e = lvs_exponent(calibrated, j, k);
      if (!e.empty) field.set(j, k, -j * e.beta);
    }
  }
  return field;
}

}  // namespace twoml
