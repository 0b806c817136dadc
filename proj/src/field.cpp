#include "twoml/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "twoml/error.hpp"
#include "twoml/indexing.hpp"

namespace twoml {

double Coefficient::value() const { return sign * std::exp2(log2_magnitude); }

CoefficientField::CoefficientField(double x0, int j_max) : x0_(x0), j_max_(j_max) {
  if (!std::isfinite(x0)) throw Error(Errc::InvalidArgument, "x0 must be finite");
  if (j_max < 0 || j_max > kMaxFieldLevel) {
    throw Error(Errc::OutOfRange,
                "j_max must lie in [0, " + std::to_string(kMaxFieldLevel) + "]");
  }
  levels_.resize(static_cast<std::size_t>(j_max) + 1);
}

bool CoefficientField::in_domain(int j, std::int64_t k) const noexcept {
  if (j < 0 || j > j_max_) return false;
  return offset(j, k) < std::ldexp(1.0, j);
}

double CoefficientField::offset(int j, std::int64_t k) const noexcept {
  return std::fabs(static_cast<double>(k) - std::ldexp(x0_, j));
}

void CoefficientField::set(int j, std::int64_t k, double log2_magnitude, int sign) {
  if (!in_domain(j, k)) {
    throw Error(Errc::OutOfRange, "(j, k) = (" + std::to_string(j) + ", " + std::to_string(k) +
                                      ") outside the field domain");
  }
  if (std::isnan(log2_magnitude) || log2_magnitude == std::numeric_limits<double>::infinity()) {
    throw Error(Errc::InvalidArgument, "log2 magnitude must be finite or -inf");
  }
  if (sign != 1 && sign != -1) throw Error(Errc::InvalidArgument, "sign must be +1 or -1");

  Level& lv = levels_[static_cast<std::size_t>(j)];
  const auto s8 = static_cast<std::int8_t>(sign);
  const std::size_t n = lv.log2mag.size();
  if (n == 0) {
    lv.first = k;
    lv.log2mag.push_back(log2_magnitude);
    lv.sign.push_back(s8);
    return;
  }
  if (lv.contiguous()) {
    const std::int64_t rel = k - lv.first;
    if (rel == static_cast<std::int64_t>(n)) {
      lv.log2mag.push_back(log2_magnitude);
      lv.sign.push_back(s8);
      return;
    }
    if (rel >= 0 && rel < static_cast<std::int64_t>(n)) {
      lv.log2mag[static_cast<std::size_t>(rel)] = log2_magnitude;
      lv.sign[static_cast<std::size_t>(rel)] = s8;
      return;
    }
    lv.ks.resize(n);
    std::iota(lv.ks.begin(), lv.ks.end(), lv.first);
  }
  const auto it = std::lower_bound(lv.ks.begin(), lv.ks.end(), k);
  const auto pos = static_cast<std::size_t>(it - lv.ks.begin());
  if (it != lv.ks.end() && *it == k) {
    lv.log2mag[pos] = log2_magnitude;
    lv.sign[pos] = s8;
    return;
  }
  lv.ks.insert(it, k);
  lv.log2mag.insert(lv.log2mag.begin() + static_cast<std::ptrdiff_t>(pos), log2_magnitude);
  lv.sign.insert(lv.sign.begin() + static_cast<std::ptrdiff_t>(pos), s8);
}

std::optional<Coefficient> CoefficientField::find(int j, std::int64_t k) const {
  if (j < 0 || j > j_max_) return std::nullopt;
  const Level& lv = levels_[static_cast<std::size_t>(j)];
  const std::size_t n = lv.log2mag.size();
  if (n == 0) return std::nullopt;
  std::size_t pos = 0;
  if (lv.contiguous()) {
    const std::int64_t rel = k - lv.first;
    if (rel < 0 || rel >= static_cast<std::int64_t>(n)) return std::nullopt;
    pos = static_cast<std::size_t>(rel);
  } else {
    const auto it = std::lower_bound(lv.ks.begin(), lv.ks.end(), k);
    if (it == lv.ks.end() || *it != k) return std::nullopt;
    pos = static_cast<std::size_t>(it - lv.ks.begin());
  }
  return Coefficient{j, k, lv.log2mag[pos], lv.sign[pos]};
}

std::size_t CoefficientField::size() const noexcept {
  std::size_t total = 0;
  for (const Level& lv : levels_) total += lv.log2mag.size();
  return total;
}

std::size_t CoefficientField::level_size(int j) const {
  if (j < 0 || j > j_max_) return 0;
  return levels_[static_cast<std::size_t>(j)].log2mag.size();
}

std::int64_t CoefficientField::k_at(int j, std::size_t i) const {
  return levels_.at(static_cast<std::size_t>(j)).k_of(i);
}

void CoefficientField::shift_log2(double delta) {
  for (Level& lv : levels_) {
    for (double& v : lv.log2mag) v += delta;
  }
}

bool operator==(const CoefficientField& a, const CoefficientField& b) {
  if (a.x0_ != b.x0_ || a.j_max_ != b.j_max_ || a.curve_ != b.curve_ || a.scheme_ != b.scheme_) {
    return false;
  }
  for (int j = 0; j <= a.j_max_; ++j) {
    const auto& la = a.levels_[static_cast<std::size_t>(j)];
    const auto& lb = b.levels_[static_cast<std::size_t>(j)];
    if (la.log2mag != lb.log2mag || la.sign != lb.sign) return false;
    for (std::size_t i = 0; i < la.log2mag.size(); ++i) {
      if (la.k_of(i) != lb.k_of(i)) return false;
    }
  }
  return true;
}

}  // namespace twoml
