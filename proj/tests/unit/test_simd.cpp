#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spinlab/simd/kernels.hpp"

namespace {

using spinlab::simd::cplx;
using spinlab::simd::KernelTable;

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

std::vector<cplx> random_phases(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  std::vector<cplx> v(n);
  for (auto& x : v) x = std::polar(1.0, u(rng));
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Lengths that exercise the vector body, the remainder and the empty case.
const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 5, 8, 17, 64, 1001};

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx = spinlab::simd::avx2_kernels();
    if (avx == nullptr) GTEST_SKIP() << "AVX2/FMA not available on this host";
  }
  const KernelTable& ref = spinlab::simd::scalar_kernels();
  const KernelTable* avx = nullptr;
  std::mt19937_64 rng{20240917};
};

TEST_F(SimdEquivalence, Hadamard) {
  for (auto n : kLengths) {
    const auto a = random_complex(n, rng), b = random_complex(n, rng);
    std::vector<cplx> r(n), v(n);
    ref.hadamard(a.data(), b.data(), r.data(), n);
    avx->hadamard(a.data(), b.data(), v.data(), n);
    EXPECT_LE(max_diff(r, v), 1e-14) << "n=" << n;
  }
}

TEST_F(SimdEquivalence, Axpy) {
  for (auto n : kLengths) {
    const auto x = random_complex(n, rng);
    auto y1 = random_complex(n, rng);
    auto y2 = y1;
    ref.axpy({0.3, -1.7}, x.data(), y1.data(), n);
    avx->axpy({0.3, -1.7}, x.data(), y2.data(), n);
    EXPECT_LE(max_diff(y1, y2), 1e-14) << "n=" << n;
  }
}

TEST_F(SimdEquivalence, Reductions) {
  for (auto n : kLengths) {
    const auto a = random_complex(n, rng), b = random_complex(n, rng);
    const double s = ref.norm_sq(a.data(), n);
    EXPECT_NEAR(s, avx->norm_sq(a.data(), n), 1e-12 * (1.0 + s)) << "n=" << n;
    EXPECT_DOUBLE_EQ(ref.max_abs_diff(a.data(), b.data(), n), avx->max_abs_diff(a.data(), b.data(), n));
  }
}

TEST_F(SimdEquivalence, PhaseSandwich) {
  for (std::size_t rows : {1u, 3u, 8u, 13u})
    for (std::size_t cols : {1u, 4u, 9u}) {
      const auto in = random_complex(rows * cols, rng);
      const auto left = random_phases(rows, rng), right = random_phases(cols, rng);
      std::vector<cplx> r(in.size()), v(in.size());
      ref.phase_sandwich(in.data(), r.data(), left.data(), right.data(), rows, cols);
      avx->phase_sandwich(in.data(), v.data(), left.data(), right.data(), rows, cols);
      EXPECT_LE(max_diff(r, v), 1e-14);
      // In-place call must agree with the out-of-place one.
      auto inplace = in;
      avx->phase_sandwich(inplace.data(), inplace.data(), left.data(), right.data(), rows, cols);
      EXPECT_LE(max_diff(inplace, v), 1e-15);
    }
}

TEST_F(SimdEquivalence, CosineSeries) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (std::size_t m : {1u, 4u, 7u, 50u}) {
    std::vector<double> omega(m), amp(m);
    for (std::size_t i = 0; i < m; ++i) {
      omega[i] = u(rng);
      amp[i] = u(rng) - 1.5;
    }
    const std::size_t n_out = 3000;
    std::vector<double> r(n_out), v(n_out);
    ref.cosine_series(omega.data(), amp.data(), m, 0.01, r.data(), n_out);
    avx->cosine_series(omega.data(), amp.data(), m, 0.01, v.data(), n_out);
    for (std::size_t i = 0; i < n_out; ++i) EXPECT_NEAR(r[i], v[i], 1e-11);
  }
}

TEST_F(SimdEquivalence, TimeTransfer) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const std::size_t n_t = 777;
  std::vector<double> w(n_t);
  for (auto& x : w) x = u(rng);
  for (std::size_t m : {1u, 3u, 4u, 11u}) {
    std::vector<double> omega(m);
    for (auto& x : omega) x = u(rng);
    std::vector<double> r(m), v(m);
    ref.time_transfer(omega.data(), m, w.data(), n_t, 0.02, r.data());
    avx->time_transfer(omega.data(), m, w.data(), n_t, 0.02, v.data());
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(r[i], v[i], 1e-9 * (1.0 + std::abs(r[i])));
  }
}

// The scalar kernels against direct formulas.
TEST(SimdReference, CosineSeriesMatchesDirectSum) {
  const std::vector<double> omega = {0.3, 1.1, 2.9}, amp = {1.0, -0.5, 0.25};
  const std::size_t n_out = 5000;
  std::vector<double> out(n_out);
  spinlab::simd::scalar_kernels().cosine_series(omega.data(), amp.data(), 3, 0.013, out.data(), n_out);
  for (std::size_t n = 0; n < n_out; n += 97) {
    double direct = 0.0;
    for (int k = 0; k < 3; ++k) direct += amp[k] * std::cos(omega[k] * static_cast<double>(n) * 0.013);
    EXPECT_NEAR(out[n], direct, 1e-12);
  }
}

TEST(SimdReference, TimeTransferMatchesCumulativeTrapezoid) {
  const std::vector<double> omega = {0.0, 0.7, -2.3};
  const std::size_t n_t = 400;
  const double dt = 0.01;
  std::vector<double> w(n_t);
  for (std::size_t n = 0; n < n_t; ++n) w[n] = std::exp(-0.01 * static_cast<double>(n));
  std::vector<double> out(3);
  spinlab::simd::scalar_kernels().time_transfer(omega.data(), 3, w.data(), n_t, dt, out.data());
  for (int m = 0; m < 3; ++m) {
    std::complex<double> integral = 0.0;
    double acc = 0.0;
    for (std::size_t n = 0; n < n_t; ++n) {
      if (n > 0)
        integral += 0.5 * dt *
                    (std::polar(1.0, omega[m] * dt * static_cast<double>(n - 1)) +
                     std::polar(1.0, omega[m] * dt * static_cast<double>(n)));
      acc += w[n] * integral.imag();
    }
    EXPECT_NEAR(out[m], acc, 1e-10);
  }
}

TEST(SimdDispatch, ActiveTableIsOneOfTheVariants) {
  const auto& k = spinlab::simd::kernels();
  const auto* avx = spinlab::simd::avx2_kernels();
  EXPECT_TRUE(&k == &spinlab::simd::scalar_kernels() || (avx != nullptr && &k == avx));
}

}  // namespace
