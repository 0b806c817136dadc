#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twoml {

struct Coefficient {
  int j = 0;
  std::int64_t k = 0;
  double log2_magnitude = 0.0;  ///< -inf for an explicit zero
  int sign = 1;

  double value() const;
  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// Sparse dyadic coefficients around a point x0, levels 0..j_max, stored in log2 magnitude.
///
/// Entries are kept per level in ascending k. A level filled left to right without gaps keeps
/// only its first position; its k array is materialized on the first out-of-order insert.
class CoefficientField {
 public:
  CoefficientField(double x0, int j_max);

  double x0() const noexcept { return x0_; }
  int j_max() const noexcept { return j_max_; }

  const std::string& curve_descriptor() const noexcept { return curve_; }
  const std::string& scheme_tag() const noexcept { return scheme_; }
  void set_curve_descriptor(std::string descriptor) { curve_ = std::move(descriptor); }
  void set_scheme_tag(std::string tag) { scheme_ = std::move(tag); }

  /// Whether (j, k) lies in the field's domain: 0 <= j <= j_max, |k − 2^j x0| < 2^j.
  bool in_domain(int j, std::int64_t k) const noexcept;
  /// |k − 2^j x0|.
  double offset(int j, std::int64_t k) const noexcept;

  /// Inserts or overwrites an entry. Throws OutOfRange outside the domain.
  void set(int j, std::int64_t k, double log2_magnitude, int sign = 1);
  std::optional<Coefficient> find(int j, std::int64_t k) const;

  std::size_t size() const noexcept;
  std::size_t level_size(int j) const;
  bool empty() const noexcept { return size() == 0; }

  /// Entry i of level j (ascending k).
  std::int64_t k_at(int j, std::size_t i) const;
  double log2_at(int j, std::size_t i) const { return levels_.at(j).log2mag[i]; }
  int sign_at(int j, std::size_t i) const { return levels_.at(j).sign[i]; }

  /// Visits all entries in ascending (j, k).
  template <class F>
  void for_each(F&& f) const {
    for (int j = 0; j <= j_max_; ++j) {
      const Level& lv = levels_[j];
      for (std::size_t i = 0; i < lv.log2mag.size(); ++i) {
        f(Coefficient{j, lv.k_of(i), lv.log2mag[i], lv.sign[i]});
      }
    }
  }

  /// Adds `delta` to every log2 magnitude (multiplies all coefficients by 2^delta).
  void shift_log2(double delta);

  friend bool operator==(const CoefficientField& a, const CoefficientField& b);

 private:
  struct Level {
    std::int64_t first = 0;
    std::vector<std::int64_t> ks;  ///< empty while the level is contiguous
    std::vector<double> log2mag;
    std::vector<std::int8_t> sign;

    bool contiguous() const noexcept { return ks.empty(); }
    std::int64_t k_of(std::size_t i) const noexcept {
      return contiguous() ? first + static_cast<std::int64_t>(i) : ks[i];
    }
  };

  double x0_;
  int j_max_;
  std::string curve_;
  std::string scheme_;
  std::vector<Level> levels_;
};

}  // namespace twoml
