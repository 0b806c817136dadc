#include "twoml/indexing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "twoml/error.hpp"

namespace twoml {

int popcount_class(std::int64_t n) {
  if (n <= 0) throw Error(Errc::NonPositive, "popcount_class needs n >= 1");
  return std::popcount(static_cast<std::uint64_t>(n));
}

int level_class(int j) { return j == 0 ? 1 : popcount_class(j); }

double van_der_corput(std::uint64_t m) {
  double value = 0.0;
  double scale = 0.5;
  while (m != 0) {
    if (m & 1U) value += scale;
    m >>= 1U;
    scale *= 0.5;
  }
  return value;
}

double r_sequence(const FrontierCurve& curve, int m) {
  if (m < 1) throw Error(Errc::NonPositive, "r_sequence needs m >= 1");
  const RatioImage image = curve.slope_ratio_image();
  if (image.degenerate()) return image.lo;
  const double margin = 1e-3 * (image.hi - image.lo);
  const double lo = image.lo + margin;
  const double hi = image.hi - margin;
  return lo + van_der_corput(static_cast<std::uint64_t>(m)) * (hi - lo);
}

bool IndexSet::contains(int j, std::int64_t k) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{j, k},
                                   [](const IndexEntry& e, const std::pair<int, std::int64_t>& p) {
                                     return std::pair{e.j, e.k} < p;
                                   });
  return it != entries.end() && it->j == j && it->k == k;
}

double upper_position(int j, double x0, double n) { return std::ceil(std::ldexp(x0, j) + n); }

std::vector<double> positions_with_offset_floor(int j, double x0, double n) {
  const double centre = std::ldexp(x0, j);
  const double width = std::ldexp(1.0, j);
  std::vector<double> out;
  const double above = std::ceil(centre + n);
  const double below = std::floor(centre - n);
  if (above - centre < width) out.push_back(above);
  if (below != above && centre - below < width) out.push_back(below);
  return out;
}

IndexSet build_index_set(const FrontierCurve& curve, double x0, int j_max) {
  if (j_max < 0) throw Error(Errc::InvalidArgument, "j_max must be >= 0");
  if (j_max > kMaxFieldLevel) {
    throw Error(Errc::OutOfRange, "j_max above " + std::to_string(kMaxFieldLevel));
  }
  IndexSet set;
  set.x0 = x0;
  set.j_max = j_max;
  for (int j = 0; j <= j_max; ++j) {
    const int m = level_class(j);
    const double r = r_sequence(curve, m);
    const double n = std::floor(std::exp2(j * r));
    std::vector<double> ks = positions_with_offset_floor(j, x0, n);
    std::sort(ks.begin(), ks.end());
    for (double k : ks) set.entries.push_back({j, static_cast<std::int64_t>(k), m, r});
  }
  return set;
}

}  // namespace twoml
