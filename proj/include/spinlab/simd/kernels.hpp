#pragma once
// Data-parallel inner loops used by the dense spin-system code.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The active table is chosen once at first use from the
// CPU feature bits; SPINLAB_SIMD=scalar|avx2|auto overrides the choice.
// Complex buffers are interleaved (re, im) as laid out by std::complex<double>.

#include <complex>
#include <cstddef>
#include <string_view>

namespace spinlab::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // out[i] = a[i] * b[i]
  void (*hadamard)(const cplx* a, const cplx* b, cplx* out, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);

  // sum |x[i]|^2
  double (*norm_sq)(const cplx* x, std::size_t n);

  // max |a[i] - b[i]|
  double (*max_abs_diff)(const cplx* a, const cplx* b, std::size_t n);

  // Column-major rows x cols block:
  //   out(j, k) = left[j] * in(j, k) * conj(right[k])
  // This is conjugation by diagonal unitaries, e.g. Heisenberg evolution in
  // an eigenbasis. in and out may alias.
  void (*phase_sandwich)(const cplx* in, cplx* out, const cplx* left,
                         const cplx* right, std::size_t rows, std::size_t cols);

  // out[n] = sum_m amp[m] * cos(omega[m] * n * dt) for n in [0, n_out).
  // Evaluated with a rotation recurrence that is resynchronised periodically.
  void (*cosine_series)(const double* omega, const double* amp,
                        std::size_t n_omega, double dt, double* out,
                        std::size_t n_out);

  // For every frequency w = omega[m], with z_n = exp(i w n dt) and
  //   I_n = trapezoid-cumulative integral of z over [0, n dt],
  // out[m] = sum_{n < n_t} weight[n] * Im(I_n).
  void (*time_transfer)(const double* omega, std::size_t n_omega,
                        const double* weight, std::size_t n_t, double dt,
                        double* out);
};

const KernelTable& scalar_kernels();

// nullptr when the build or the host CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// The dispatched table.
const KernelTable& kernels();

}  // namespace spinlab::simd
