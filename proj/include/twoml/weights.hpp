#pragma once

#include <functional>
#include <string>

namespace twoml {

/// Where a weight is evaluated: level j, position k, offset |k − 2^j x0|.
struct Site {
  int j = 0;
  double k = 0.0;
  double offset = 0.0;
};

enum class SchemeKind { Unit, MeyerStyle, LVSStyle, Custom };

const char* scheme_kind_name(SchemeKind kind) noexcept;

/// Positive weights (C_{j,k}, λ_{j,k}) supplied as log2 rules.
class WeightScheme {
 public:
  using Rule = std::function<double(const Site&)>;

  /// C ≡ 1, λ ≡ 1.
  static WeightScheme unit();
  static WeightScheme custom(Rule log2_c, Rule log2_lambda, std::string tag = "custom");
  static WeightScheme make(SchemeKind kind, Rule log2_c, Rule log2_lambda, std::string tag);

  SchemeKind kind() const noexcept { return kind_; }
  const std::string& tag() const noexcept { return tag_; }

  /// log2 C at a site; InvalidScheme unless finite.
  double log2_c(const Site& site) const;
  /// log2 λ at a site; InvalidScheme unless finite.
  double log2_lambda(const Site& site) const;

 private:
  WeightScheme(SchemeKind kind, Rule log2_c, Rule log2_lambda, std::string tag);

  SchemeKind kind_;
  Rule log2_c_;
  Rule log2_lambda_;
  std::string tag_;
};

}  // namespace twoml
