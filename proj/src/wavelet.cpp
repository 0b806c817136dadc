#include "twoml/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "twoml/error.hpp"

namespace twoml {

namespace {

using std::numbers::pi;

struct Node {
  double omega;
  double weight;  ///< quadrature weight × profile / π
};

// Composite 30-point Gauss–Legendre nodes over both frequency pieces.
const std::vector<Node>& quadrature_nodes() {
  static const std::vector<Node> nodes = [] {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    std::vector<Node> out;
    auto add_piece = [&](double a, double b, int parts) {
      const double width = (b - a) / parts;
      for (int p = 0; p < parts; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
          for (const double side : {-1.0, 1.0}) {
            if (abscissa[i] == 0.0 && side < 0.0) continue;
            const double omega = mid + side * half * abscissa[i];
            out.push_back({omega, half * weights[i] * meyer_profile(omega) / pi});
          }
        }
      }
    };
    add_piece(2.0 * pi / 3.0, 4.0 * pi / 3.0, 8);
    add_piece(4.0 * pi / 3.0, 8.0 * pi / 3.0, 16);
    return out;
  }();
  return nodes;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

WaveletTable::WaveletTable(std::vector<double> samples, double half_width)
    : samples_(std::move(samples)), half_width_(half_width) {
  if (samples_.size() < 4 || !(half_width > 0.0)) {
    throw Error(Errc::BadGrid, "a wavelet table needs at least 4 samples and T > 0");
  }
  step_ = 2.0 * half_width_ / static_cast<double>(samples_.size() - 1);
}

double WaveletTable::operator()(double x) const noexcept {
  if (!(x >= -half_width_ && x <= half_width_)) return 0.0;
  const double u = (x + half_width_) / step_;
  const auto n = static_cast<std::ptrdiff_t>(samples_.size());
  const auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  const std::ptrdiff_t base = std::clamp<std::ptrdiff_t>(i - 1, 0, n - 4);
  const double t = u - static_cast<double>(base);
  const double* y = samples_.data() + base;
  const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3];
}

double meyer_ramp(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double t4 = t * t * t * t;
  return t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

double meyer_profile(double omega) noexcept {
  const double w = std::fabs(omega);
  if (w < 2.0 * pi / 3.0 || w > 8.0 * pi / 3.0) return 0.0;
  if (w <= 4.0 * pi / 3.0) return std::sin(pi / 2.0 * meyer_ramp(3.0 * w / (2.0 * pi) - 1.0));
  return std::cos(pi / 2.0 * meyer_ramp(3.0 * w / (4.0 * pi) - 1.0));
}

double meyer_psi_direct(double x) {
  double sum = 0.0;
  const double shifted = x - 0.5;
  for (const Node& node : quadrature_nodes()) sum += node.weight * std::cos(node.omega * shifted);
  return sum;
}

WaveletTable build_meyer_table(std::size_t n_points, double half_width) {
  if (!is_power_of_two(n_points) || n_points < (std::size_t{1} << 12)) {
    throw Error(Errc::BadGrid, "n_points must be a power of two >= 4096");
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw Error(Errc::BadGrid, "half width must be positive");
  }
  const double step = 2.0 * half_width / static_cast<double>(n_points - 1);
  std::vector<double> samples(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    samples[i] = meyer_psi_direct(-half_width + static_cast<double>(i) * step);
  }
  WaveletTable raw(samples, half_width);
  const double scale = 1.0 / std::sqrt(table_energy(raw));
  for (double& v : samples) v *= scale;
  return WaveletTable(std::move(samples), half_width);
}

double psi(const WaveletTable& table, double x) { return table(x); }

double table_moment(const WaveletTable& table, int n) {
  const auto& y = table.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = (i == 0 || i + 1 == y.size()) ? 0.5 : 1.0;
    sum += w * std::pow(table.x_at(i), n) * y[i];
  }
  return sum * table.step();
}

double table_energy(const WaveletTable& table) {
  const auto& y = table.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = (i == 0 || i + 1 == y.size()) ? 0.5 : 1.0;
    sum += w * y[i] * y[i];
  }
  return sum * table.step();
}

SignalSamples reconstruct(const CoefficientField& field, const WaveletTable& table, double x_lo,
                          double x_hi, std::size_t n) {
  if (n < 2 || !(x_hi > x_lo) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
    throw Error(Errc::BadGrid, "reconstruction needs n >= 2 and x_lo < x_hi");
  }
  SignalSamples out;
  out.j_max = field.j_max();
  out.x.resize(n);
  out.f.assign(n, 0.0);
  const double dx = (x_hi - x_lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out.x[i] = x_lo + static_cast<double>(i) * dx;
  const double T = table.half_width();

  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j <= field.j_max(); ++j) {
      const std::size_t count = field.level_size(j);
      if (count == 0) continue;
      const double u = std::ldexp(out.x[i], j);
      // first entry with k >= u − T
      std::size_t lo = 0;
      std::size_t hi = count;
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (static_cast<double>(field.k_at(j, mid)) < u - T) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      for (std::size_t e = lo; e < count; ++e) {
        const double arg = u - static_cast<double>(field.k_at(j, e));
        if (arg < -T) break;
        const double lm = field.log2_at(j, e);
        if (lm == -std::numeric_limits<double>::infinity()) continue;
        sum += field.sign_at(j, e) * std::exp2(lm) * table(arg);
      }
    }
    out.f[i] = sum;
  }
  return out;
}

double orthonormality_check(const WaveletTable& table, int j1, std::int64_t k1, int j2,
                            std::int64_t k2) {
  if (j1 < 0 || j2 < 0) throw Error(Errc::InvalidArgument, "levels must be >= 0");
  const double T = table.half_width();
  const double s1 = std::ldexp(1.0, j1);
  const double s2 = std::ldexp(1.0, j2);
  const double lo = std::max((static_cast<double>(k1) - T) / s1, (static_cast<double>(k2) - T) / s2);
  const double hi = std::min((static_cast<double>(k1) + T) / s1, (static_cast<double>(k2) + T) / s2);
  if (!(hi > lo)) return 0.0;
  const double step = table.step() / std::max(s1, s2);
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  const double h = (hi - lo) / static_cast<double>(n - 1);
  const double norm = std::sqrt(s1 * s2);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + static_cast<double>(i) * h;
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    sum += w * table(s1 * x - static_cast<double>(k1)) * table(s2 * x - static_cast<double>(k2));
  }
  return norm * sum * h;
}

}  // namespace twoml
