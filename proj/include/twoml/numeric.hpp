#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "twoml/error.hpp"

namespace twoml {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// log2(1 + x), accurate for small x.
inline double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

/// Root of f on [lo, hi] given a sign change between the endpoints.
template <class F>
double bisect_root(F&& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Grows [lo, hi] geometrically about its centre until f changes sign, then bisects.
template <class F>
double bracket_and_bisect(F&& f, double lo, double hi, double tol) {
  for (int grow = 0; grow < 64; ++grow) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (std::isfinite(f_lo) && std::isfinite(f_hi) && (f_lo <= 0.0) != (f_hi <= 0.0)) {
      return bisect_root(f, lo, hi, tol);
    }
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    const double half = hi - lo;
    lo -= half;
    hi += half;
  }
  throw Error(Errc::InvalidArgument, "no sign change found while bracketing a root");
}

/// Shortest text that parses back to the same double; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double value);

/// Fixed number of significant digits, C-locale formatting.
std::string format_double(double value, int significant_digits);

/// Parses the whole of `text` as a double (accepts "inf" and "-inf").
std::optional<double> parse_double(std::string_view text);

std::optional<long long> parse_integer(std::string_view text);

}  // namespace twoml
