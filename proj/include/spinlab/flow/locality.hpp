#pragma once

#include <vector>

#include "spinlab/core/linalg.hpp"

namespace spinlab {

struct LocalityProfile {
  int center = 0;
  std::vector<int> radii;
  // delta_r = ||a - E_{B_r}(a)||
  std::vector<double> deltas;
  // -slope of ln delta_r over the interior radii with delta_r > 1e-13; NaN
  // when fewer than two such radii exist.
  double decay_rate = 0.0;
};

LocalityProfile locality_profile(const ComplexMatrix& alpha_a, int center,
                                 const LatticeGeometry& geometry);

// Psi(Z_0) = E_{B_0}(D), Psi(Z_r) = E_{B_r}(D) - E_{B_{r-1}}(D) up to the
// eccentricity of the center, where B_r is the whole lattice.
struct InteractionDecomposition {
  int center = 0;
  std::vector<int> radii;
  std::vector<ComplexMatrix> terms;
  std::vector<double> norms;
  double reconstruction_error = 0.0;  // ||sum Psi - D||
};

InteractionDecomposition decompose_generator(const ComplexMatrix& d, int center,
                                             const LatticeGeometry& geometry);

}  // namespace spinlab
