#pragma once

#include <cstdint>
#include <vector>

#include "twoml/field.hpp"

namespace twoml {

/// Meyer mother wavelet sampled on a uniform grid over [−T, T].
class WaveletTable {
 public:
  WaveletTable(std::vector<double> samples, double half_width);

  double half_width() const noexcept { return half_width_; }
  double step() const noexcept { return step_; }
  const std::vector<double>& samples() const noexcept { return samples_; }
  double x_at(std::size_t i) const noexcept { return -half_width_ + static_cast<double>(i) * step_; }

  /// Cubic (four-point Lagrange) interpolation inside [−T, T], 0 outside.
  double operator()(double x) const noexcept;

 private:
  std::vector<double> samples_;
  double half_width_;
  double step_;
};

/// Meyer transition polynomial t⁴(35 − 84t + 70t² − 20t³), clamped to [0, 1].
double meyer_ramp(double t) noexcept;

/// Frequency magnitude of the Meyer wavelet at ω >= 0.
double meyer_profile(double omega) noexcept;

/// ψ(x) = (1/π) ∫ profile(ω) cos(ω(x − 1/2)) dω over 2π/3 <= ω <= 8π/3 by composite
/// Gauss–Legendre quadrature, evaluated on n_points samples of [−T, T] and scaled to unit
/// energy. BadGrid unless n_points is a power of two >= 2^12 and T > 0.
WaveletTable build_meyer_table(std::size_t n_points = 65536, double half_width = 32.0);

/// Unscaled ψ(x) from the quadrature, without the table.
double meyer_psi_direct(double x);

double psi(const WaveletTable& table, double x);

/// ∫ xⁿ ψ(x) dx by the trapezoid rule over the table.
double table_moment(const WaveletTable& table, int n);

/// ∫ ψ² by the trapezoid rule over the table.
double table_energy(const WaveletTable& table);

struct SignalSamples {
  std::vector<double> x;
  std::vector<double> f;
  int j_max = 0;
};

/// f(x_i) = Σ c_{j,k} ψ(2^j x_i − k), ascending j then k, over n uniform points of [x_lo, x_hi].
SignalSamples reconstruct(const CoefficientField& field, const WaveletTable& table, double x_lo,
                          double x_hi, std::size_t n);

/// ∫ 2^{j1/2} ψ(2^{j1} x − k1) 2^{j2/2} ψ(2^{j2} x − k2) dx by the trapezoid rule.
double orthonormality_check(const WaveletTable& table, int j1, std::int64_t k1, int j2,
                            std::int64_t k2);

}  // namespace twoml
