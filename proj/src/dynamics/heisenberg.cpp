#include "spinlab/dynamics/heisenberg.hpp"

#include <cmath>

#include "spinlab/core/error.hpp"
#include "spinlab/simd/kernels.hpp"

namespace spinlab {

ComplexMatrix heisenberg_evolve(const EigenSystem& eig, const ComplexMatrix& b, double t) {
  const auto n = eig.vectors.rows();
  if (b.rows() != n || b.cols() != n || eig.vectors.cols() != n)
    throw ValidationError("heisenberg_evolve: dimension mismatch");
  if (t == 0.0) return b;
  ComplexMatrix bt = eig.vectors.adjoint() * b * eig.vectors;
  std::vector<Complex> phase(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) phase[static_cast<std::size_t>(j)] = std::polar(1.0, eig.energies(j) * t);
  simd::kernels().phase_sandwich(bt.data(), bt.data(), phase.data(), phase.data(),
                                 static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  return eig.vectors * bt * eig.vectors.adjoint();
}

}  // namespace spinlab
