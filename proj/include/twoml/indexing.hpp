#pragma once

#include <cstdint>
#include <vector>

#include "twoml/frontier.hpp"

namespace twoml {

/// Number of ones in the binary expansion of n (n >= 1).
int popcount_class(std::int64_t n);

/// Class owning level j; level 0 has no ones and is assigned to class 1.
int level_class(int j);

/// Base-2 Van der Corput element m (bit-reversed radical inverse), in [0, 1).
double van_der_corput(std::uint64_t m);

/// Dense sequence r_m in the slope-ratio image; constant γ for a line.
double r_sequence(const FrontierCurve& curve, int m);

struct IndexEntry {
  int j = 0;
  std::int64_t k = 0;
  int m = 0;
  double r = 0.0;
};

struct IndexSet {
  double x0 = 0.0;
  int j_max = 0;
  std::vector<IndexEntry> entries;  ///< ascending (j, k)

  bool contains(int j, std::int64_t k) const;
};

/// Positions (j, k) with floor(|k − 2^j x0|) = floor(2^{j r_m}), j ∈ Λ_m, |k − 2^j x0| < 2^j.
IndexSet build_index_set(const FrontierCurve& curve, double x0, int j_max);

/// Positions at level j whose offset from 2^j x0 has integer part `n`, above then below.
/// Only positions strictly inside the level's range are returned. Doubles so that levels
/// beyond the integer range can be sampled.
std::vector<double> positions_with_offset_floor(int j, double x0, double n);

/// Position at level j whose offset above 2^j x0 has integer part `n`.
double upper_position(int j, double x0, double n);

/// Largest level a coefficient field may hold (positions stay exact in a double).
inline constexpr int kMaxFieldLevel = 52;

}  // namespace twoml
