// Compiled with -mavx2 -mfma; only reached after a runtime feature check.
#include "spinlab/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#define SPINLAB_HAVE_AVX2 1
#include <immintrin.h>
#else
#define SPINLAB_HAVE_AVX2 0
#endif

#if SPINLAB_HAVE_AVX2

#include <algorithm>
#include <cmath>

#include "kernels_common.hpp"

namespace spinlab::simd {
namespace {

using detail::kResyncPeriod;

// Two interleaved complex numbers per register: [r0, i0, r1, i1].
inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline const double* dp(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

void hadamard(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d vb = _mm256_loadu_pd(dp(b + i));
    _mm256_storeu_pd(dp(out + i), cmul2(va, vb));
  }
  for (; i < n; ++i) {
    const double r = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    out[i] = {r, im};
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(),
                                    alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(dp(x + i));
    const __m256d vy = _mm256_loadu_pd(dp(y + i));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(vy, cmul2(vx, va)));
  }
  for (; i < n; ++i) {
    const double r = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] = {y[i].real() + r, y[i].imag() + im};
  }
}

double norm_sq(const cplx* x, std::size_t n) {
  const double* p = dp(x);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(p + i);
    const __m256d v1 = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < len; ++i) s += p[i] * p[i];
  return s;
}

double max_abs_diff(const cplx* a, const cplx* b, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dp(a + i)),
                                    _mm256_loadu_pd(dp(b + i)));
    const __m256d sq = _mm256_mul_pd(d, d);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::norm(a[i] - b[i]));
  return std::sqrt(m);
}

void phase_sandwich(const cplx* in, cplx* out, const cplx* left,
                    const cplx* right, std::size_t rows, std::size_t cols) {
  for (std::size_t k = 0; k < cols; ++k) {
    const double rr = right[k].real();
    const double ri = -right[k].imag();
    const __m256d vr = _mm256_setr_pd(rr, ri, rr, ri);
    const cplx* src = in + k * rows;
    cplx* dst = out + k * rows;
    std::size_t j = 0;
    for (; j + 2 <= rows; j += 2) {
      const __m256d f = cmul2(_mm256_loadu_pd(dp(left + j)), vr);
      _mm256_storeu_pd(dp(dst + j), cmul2(f, _mm256_loadu_pd(dp(src + j))));
    }
    for (; j < rows; ++j) {
      const double fr = left[j].real() * rr - left[j].imag() * ri;
      const double fi = left[j].real() * ri + left[j].imag() * rr;
      const double sr = src[j].real(), si = src[j].imag();
      dst[j] = {fr * sr - fi * si, fr * si + fi * sr};
    }
  }
}

// Vectorised over four consecutive time points per frequency.
void cosine_series(const double* omega, const double* amp, std::size_t n_omega,
                   double dt, double* out, std::size_t n_out) {
  std::fill(out, out + n_out, 0.0);
  const std::size_t n_vec = n_out - n_out % 4;
  for (std::size_t m = 0; m < n_omega; ++m) {
    const double w = omega[m];
    const __m256d rot_r = _mm256_set1_pd(std::cos(4.0 * w * dt));
    const __m256d rot_i = _mm256_set1_pd(std::sin(4.0 * w * dt));
    const __m256d a = _mm256_set1_pd(amp[m]);
    __m256d zr = _mm256_setzero_pd();
    __m256d zi = _mm256_setzero_pd();
    for (std::size_t n = 0; n < n_vec; n += 4) {
      if (n % kResyncPeriod == 0) {
        alignas(32) double cr[4], ci[4];
        for (int l = 0; l < 4; ++l) {
          const double ph = w * static_cast<double>(n + l) * dt;
          cr[l] = std::cos(ph);
          ci[l] = std::sin(ph);
        }
        zr = _mm256_load_pd(cr);
        zi = _mm256_load_pd(ci);
      }
      _mm256_storeu_pd(out + n, _mm256_fmadd_pd(a, zr, _mm256_loadu_pd(out + n)));
      const __m256d nr = _mm256_fmsub_pd(zr, rot_r, _mm256_mul_pd(zi, rot_i));
      const __m256d ni = _mm256_fmadd_pd(zr, rot_i, _mm256_mul_pd(zi, rot_r));
      zr = nr;
      zi = ni;
    }
    for (std::size_t n = n_vec; n < n_out; ++n)
      out[n] += amp[m] * std::cos(w * static_cast<double>(n) * dt);
  }
}

// Vectorised over four frequencies.
void time_transfer(const double* omega, std::size_t n_omega,
                   const double* weight, std::size_t n_t, double dt,
                   double* out) {
  const std::size_t m_vec = n_omega - n_omega % 4;
  const __m256d half_dt = _mm256_set1_pd(0.5 * dt);
  for (std::size_t m = 0; m < m_vec; m += 4) {
    alignas(32) double rr[4], ri[4];
    for (int l = 0; l < 4; ++l) {
      rr[l] = std::cos(omega[m + l] * dt);
      ri[l] = std::sin(omega[m + l] * dt);
    }
    const __m256d rot_r = _mm256_load_pd(rr);
    const __m256d rot_i = _mm256_load_pd(ri);
    __m256d zr = _mm256_set1_pd(1.0);
    __m256d zi = _mm256_setzero_pd();
    __m256d im_int = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t n = 1; n < n_t; ++n) {
      __m256d nr, ni;
      if (n % kResyncPeriod == 0) {
        alignas(32) double cr[4], ci[4];
        for (int l = 0; l < 4; ++l) {
          const double ph = omega[m + l] * static_cast<double>(n) * dt;
          cr[l] = std::cos(ph);
          ci[l] = std::sin(ph);
        }
        nr = _mm256_load_pd(cr);
        ni = _mm256_load_pd(ci);
      } else {
        nr = _mm256_fmsub_pd(zr, rot_r, _mm256_mul_pd(zi, rot_i));
        ni = _mm256_fmadd_pd(zr, rot_i, _mm256_mul_pd(zi, rot_r));
      }
      im_int = _mm256_fmadd_pd(half_dt, _mm256_add_pd(zi, ni), im_int);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(weight[n]), im_int, acc);
      zr = nr;
      zi = ni;
    }
    _mm256_storeu_pd(out + m, acc);
  }
  if (m_vec < n_omega)
    scalar_kernels().time_transfer(omega + m_vec, n_omega - m_vec, weight, n_t,
                                   dt, out + m_vec);
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2",        hadamard,      axpy,
                                 norm_sq,       max_abs_diff,  phase_sandwich,
                                 cosine_series, time_transfer};
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &table : nullptr;
}

}  // namespace spinlab::simd

#else

namespace spinlab::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace spinlab::simd

#endif
