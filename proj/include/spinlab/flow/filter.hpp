#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinlab/core/types.hpp"

namespace spinlab {

// Filter pair (w, w_hat) with w_hat(omega) = int w(t) e^{i omega t} dt the
// smooth bump exp(1 - 1/(1 - (omega/gamma)^2)) on |omega| < gamma, zero
// outside, so w_hat(0) = int w = 1. The transfer function
//   W(omega) = (w_hat(omega) - 1) / (i omega),  W(0) = 0,
// is odd and purely imaginary. Time samples of w, when requested, are
// tabulated on t = n dt in [0, T] by trapezoid quadrature of the inverse
// transform (w is real and even, so only t >= 0 is stored).
class FilterFunction {
 public:
  explicit FilterFunction(double gamma);
  FilterFunction(double gamma, double t_max, double dt);

  double gamma() const { return gamma_; }
  double w_hat(double omega) const;
  Complex transfer(double omega) const;

  bool has_time_samples() const { return !samples_.empty(); }
  double t_max() const { return t_max_; }
  double dt() const { return dt_; }
  // w(n dt) for n = 0 .. round(T / dt).
  std::span<const double> time_samples() const { return samples_; }
  // w at t = n dt for any integer n (evenness applied).
  double w_at(long n) const;
  // Trapezoid sum of w over [-T, T].
  double time_integral() const;
  std::size_t frequency_nodes() const { return frequency_nodes_; }

 private:
  double gamma_;
  double t_max_ = 0.0;
  double dt_ = 0.0;
  std::size_t frequency_nodes_ = 0;
  std::vector<double> samples_;
};

// Validates gamma, T, dt > 0 and T / dt >= 16.
FilterFunction make_filter(double gamma, double t_max, double dt);

// T = 200 / gamma.
double default_truncation(double gamma);

}  // namespace spinlab
