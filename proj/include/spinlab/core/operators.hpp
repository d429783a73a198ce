#pragma once

#include <cmath>

#include "spinlab/core/types.hpp"

namespace spinlab::ops {

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

// Basis order |0> = spin up (+1), |1> = spin down (-1).
inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

// Spin-1 operators in the S^z basis (+1, 0, -1).
inline ComplexMatrix spin1_z() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(2, 2) = -1.0;
  return m;
}

inline ComplexMatrix spin1_x() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
  return m;
}

inline ComplexMatrix spin1_y() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = -kI * r;
  m(1, 0) = kI * r;
  m(1, 2) = -kI * r;
  m(2, 1) = kI * r;
  return m;
}

}  // namespace spinlab::ops
