#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace spinlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Largest total Hilbert dimension handled by the dense code paths.
inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << 14;

}  // namespace spinlab
