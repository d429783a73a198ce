#include <algorithm>
#include <cmath>

#include "kernels_common.hpp"
#include "spinlab/simd/kernels.hpp"

namespace spinlab::simd {
namespace {

using detail::kResyncPeriod;

// std::complex multiplication goes through the Annex G NaN path; the
// kernels spell out the real arithmetic instead.
inline void cmul(double ar, double ai, double br, double bi, double& cr,
                 double& ci) {
  cr = ar * br - ai * bi;
  ci = ar * bi + ai * br;
}

void hadamard(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double r, im;
    cmul(a[i].real(), a[i].imag(), b[i].real(), b[i].imag(), r, im);
    out[i] = {r, im};
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double r, im;
    cmul(alpha.real(), alpha.imag(), x[i].real(), x[i].imag(), r, im);
    y[i] = {y[i].real() + r, y[i].imag() + im};
  }
}

double norm_sq(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

double max_abs_diff(const cplx* a, const cplx* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    m = std::max(m, std::sqrt(dr * dr + di * di));
  }
  return m;
}

void phase_sandwich(const cplx* in, cplx* out, const cplx* left,
                    const cplx* right, std::size_t rows, std::size_t cols) {
  for (std::size_t k = 0; k < cols; ++k) {
    const double rr = right[k].real();
    const double ri = -right[k].imag();
    const cplx* src = in + k * rows;
    cplx* dst = out + k * rows;
    for (std::size_t j = 0; j < rows; ++j) {
      double fr, fi, r, im;
      cmul(left[j].real(), left[j].imag(), rr, ri, fr, fi);
      cmul(fr, fi, src[j].real(), src[j].imag(), r, im);
      dst[j] = {r, im};
    }
  }
}

void cosine_series(const double* omega, const double* amp, std::size_t n_omega,
                   double dt, double* out, std::size_t n_out) {
  std::fill(out, out + n_out, 0.0);
  for (std::size_t m = 0; m < n_omega; ++m) {
    const double rot_r = std::cos(omega[m] * dt);
    const double rot_i = std::sin(omega[m] * dt);
    double zr = 1.0, zi = 0.0;
    for (std::size_t n = 0; n < n_out; ++n) {
      if (n % kResyncPeriod == 0) {
        zr = std::cos(omega[m] * static_cast<double>(n) * dt);
        zi = std::sin(omega[m] * static_cast<double>(n) * dt);
      }
      out[n] += amp[m] * zr;
      double nr, ni;
      cmul(zr, zi, rot_r, rot_i, nr, ni);
      zr = nr;
      zi = ni;
    }
  }
}

void time_transfer(const double* omega, std::size_t n_omega,
                   const double* weight, std::size_t n_t, double dt,
                   double* out) {
  const double half_dt = 0.5 * dt;
  for (std::size_t m = 0; m < n_omega; ++m) {
    const double rot_r = std::cos(omega[m] * dt);
    const double rot_i = std::sin(omega[m] * dt);
    double zr = 1.0, zi = 0.0, im_int = 0.0, acc = 0.0;
    for (std::size_t n = 1; n < n_t; ++n) {
      double nr, ni;
      if (n % kResyncPeriod == 0) {
        nr = std::cos(omega[m] * static_cast<double>(n) * dt);
        ni = std::sin(omega[m] * static_cast<double>(n) * dt);
      } else {
        cmul(zr, zi, rot_r, rot_i, nr, ni);
      }
      im_int += half_dt * (zi + ni);
      acc += weight[n] * im_int;
      zr = nr;
      zi = ni;
    }
    out[m] = acc;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",      hadamard,      axpy,
                                 norm_sq,       max_abs_diff,  phase_sandwich,
                                 cosine_series, time_transfer};
  return table;
}

}  // namespace spinlab::simd
