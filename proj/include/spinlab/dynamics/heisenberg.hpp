#pragma once

#include "spinlab/core/linalg.hpp"

namespace spinlab {

// tau_t(b) = e^{iHt} b e^{-iHt} with H given by its eigensystem. t = 0
// returns b unchanged.
ComplexMatrix heisenberg_evolve(const EigenSystem& eig, const ComplexMatrix& b, double t);

}  // namespace spinlab
