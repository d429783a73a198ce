#include "spinlab/spectral/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "spinlab/core/error.hpp"
#include "spinlab/spectral/ground.hpp"

namespace spinlab {

double entanglement_entropy(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw ValidationError("entropy: density matrix must be square and nonempty");
  if (hermiticity_error(rho) > 1e-10 * std::max(1.0, frobenius_norm(rho)))
    throw ValidationError("entropy: density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10)
    throw ValidationError("entropy: density matrix must have unit trace");
  const RealVector p = hermitian_eigenvalues(rho);
  if (p.minCoeff() < -1e-10) throw ValidationError("entropy: density matrix is not positive");
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

ComplexMatrix reduced_density(const ComplexVector& psi, std::span<const int> keep,
                              const LatticeGeometry& geometry) {
  geometry.require_subset(keep, "reduced density region");
  if (static_cast<std::size_t>(psi.size()) != geometry.dimension())
    throw ValidationError("reduced density: state has the wrong dimension");
  std::vector<int> kept(keep.begin(), keep.end());
  std::ranges::sort(kept, [&](int a, int b) { return geometry.position(a) < geometry.position(b); });
  std::vector<int> rest;
  for (int s : geometry.sites())
    if (std::ranges::find(kept, s) == kept.end()) rest.push_back(s);

  auto split_index = [&](std::size_t i, const std::vector<int>& part) {
    std::size_t out = 0;
    for (int s : part) {
      const auto d = static_cast<std::size_t>(geometry.local_dim(s));
      out = out * d + (i / geometry.stride(s)) % d;
    }
    return out;
  };
  const auto dk = static_cast<Eigen::Index>(geometry.dimension_of(kept));
  const auto dr = static_cast<Eigen::Index>(geometry.dimension_of(rest));
  ComplexMatrix m = ComplexMatrix::Zero(dk, dr);
  for (std::size_t i = 0; i < geometry.dimension(); ++i)
    m(static_cast<Eigen::Index>(split_index(i, kept)),
      static_cast<Eigen::Index>(split_index(i, rest))) = psi(static_cast<Eigen::Index>(i));
  return m * m.adjoint();
}

std::vector<BlockEntropy> area_law_scan(const Model& model, double lambda,
                                        const std::optional<ComplexVector>& state,
                                        std::vector<int> lengths) {
  const auto& g = model.geometry;
  const int n = static_cast<int>(g.n_sites());
  if (lengths.empty())
    for (int l = 1; l <= n / 2; ++l) lengths.push_back(l);

  ComplexVector psi;
  if (state) {
    psi = *state;
    if (static_cast<std::size_t>(psi.size()) != g.dimension())
      throw ValidationError("area law: state has the wrong dimension");
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-10) throw ValidationError("area law: state is not normalised");
  } else {
    const GroundData gd = model_ground_data(model, lambda, PatchPolicy{});
    if (gd.m != 1)
      throw ValidationError("area law: ground state is " + std::to_string(gd.m) +
                            "-fold degenerate; pass an explicit state");
    psi = gd.vectors.col(0);
  }

  std::vector<BlockEntropy> out;
  for (int l : lengths) {
    if (l < 0 || l > n) throw ValidationError("area law: block length out of range");
    std::vector<int> block(g.sites().begin(), g.sites().begin() + l);
    out.push_back(BlockEntropy{l, entanglement_entropy(reduced_density(psi, block, g))});
  }
  return out;
}

}  // namespace spinlab
