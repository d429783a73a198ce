#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/SVD>

// Open transverse-field Ising chain H = -sum x_i x_{i+1} - lambda sum z_i
// through the Jordan-Wigner map: single-particle energies are twice the
// singular values of the bidiagonal matrix B[j][j] = lambda, B[j+1][j] = 1.
namespace oracle {

inline std::vector<double> tfim_modes(int n, double lambda) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    b(j, j) = lambda;
    if (j + 1 < n) b(j + 1, j) = 1.0;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  std::vector<double> eps;
  for (int j = 0; j < n; ++j) eps.push_back(2.0 * svd.singularValues()(j));
  std::ranges::sort(eps);
  return eps;
}

// Every occupation pattern is a physical state of the open chain, so the
// many-body spectrum is E0 + (subset sums of the modes).
inline std::vector<double> tfim_spectrum(int n, double lambda) {
  const auto eps = tfim_modes(n, lambda);
  const double e0 = -0.5 * std::accumulate(eps.begin(), eps.end(), 0.0);
  std::vector<double> out(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    double e = e0;
    for (int k = 0; k < n; ++k)
      if ((mask >> k) & 1u) e += eps[static_cast<std::size_t>(k)];
    out[mask] = e;
  }
  std::ranges::sort(out);
  return out;
}

}  // namespace oracle
