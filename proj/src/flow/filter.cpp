#include "spinlab/flow/filter.hpp"

#include <cmath>
#include <numbers>

#include "spinlab/core/error.hpp"
#include "spinlab/simd/kernels.hpp"

namespace spinlab {

namespace {

// w_hat - 1, accurate near omega = 0.
double w_hat_minus_one(double x) {
  if (std::abs(x) >= 1.0) return -1.0;
  const double x2 = x * x;
  return std::expm1(-x2 / (1.0 - x2));
}

}  // namespace

FilterFunction::FilterFunction(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("filter: gamma must be positive");
}

FilterFunction::FilterFunction(double gamma, double t_max, double dt) : FilterFunction(gamma) {
  if (!(t_max > 0.0) || !(dt > 0.0) || !std::isfinite(t_max) || !std::isfinite(dt))
    throw ValidationError("filter: T and dt must be positive");
  const double ratio = t_max / dt;
  if (ratio < 16.0) throw ValidationError("filter: degenerate time grid (T/dt < 16)");
  t_max_ = t_max;
  dt_ = dt;
  const auto n_t = static_cast<std::size_t>(std::llround(ratio)) + 1;

  // Trapezoid nodes on [0, gamma]. The sum is periodic in t with period
  // 2 pi / d_omega; keep the first alias at least 400/gamma beyond T.
  const double period = 2.0 * t_max + 400.0 / gamma;
  const auto nodes = std::max<std::size_t>(
      256, static_cast<std::size_t>(std::ceil(gamma * period / (2.0 * std::numbers::pi))));
  frequency_nodes_ = nodes + 1;
  const double d_omega = gamma / static_cast<double>(nodes);
  std::vector<double> omega(frequency_nodes_), amp(frequency_nodes_);
  for (std::size_t m = 0; m <= nodes; ++m) {
    omega[m] = d_omega * static_cast<double>(m);
    const double q = (m == 0 || m == nodes) ? 0.5 : 1.0;
    amp[m] = q * d_omega / std::numbers::pi * w_hat(omega[m]);
  }
  samples_.resize(n_t);
  simd::kernels().cosine_series(omega.data(), amp.data(), omega.size(), dt, samples_.data(), n_t);
}

double FilterFunction::w_hat(double omega) const {
  return 1.0 + w_hat_minus_one(omega / gamma_);
}

Complex FilterFunction::transfer(double omega) const {
  if (omega == 0.0) return 0.0;
  if (std::abs(omega) >= gamma_) return {0.0, 1.0 / omega};
  // (w_hat - 1) / (i omega) = i (1 - w_hat) / omega
  return {0.0, -w_hat_minus_one(omega / gamma_) / omega};
}

double FilterFunction::w_at(long n) const {
  const auto k = static_cast<std::size_t>(std::labs(n));
  if (k >= samples_.size()) throw ValidationError("filter: time index outside the tabulated grid");
  return samples_[k];
}

double FilterFunction::time_integral() const {
  if (samples_.empty()) throw ValidationError("filter: no time samples");
  double s = 0.5 * samples_.front();  // t = 0 counted once across both halves
  for (std::size_t n = 1; n + 1 < samples_.size(); ++n) s += samples_[n];
  s += 0.5 * samples_.back();
  return 2.0 * dt_ * s;
}

FilterFunction make_filter(double gamma, double t_max, double dt) {
  return FilterFunction(gamma, t_max, dt);
}

double default_truncation(double gamma) {
  if (!(gamma > 0.0)) throw ValidationError("filter: gamma must be positive");
  return 200.0 / gamma;
}

}  // namespace spinlab
