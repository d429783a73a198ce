#include "spinlab/flow/generator.hpp"

#include <algorithm>

#include "spinlab/core/error.hpp"
#include "spinlab/simd/kernels.hpp"

namespace spinlab {

namespace {

ComplexMatrix eigenbasis(const EigenSystem& eig, const ComplexMatrix& hprime) {
  const auto n = eig.vectors.rows();
  if (hprime.rows() != n || hprime.cols() != n || eig.vectors.cols() != n)
    throw ValidationError("flow generator: dimension mismatch");
  ComplexMatrix hp = eig.vectors.adjoint() * hprime * eig.vectors;
  return (0.5 * (hp + hp.adjoint())).eval();
}

}  // namespace

ComplexMatrix generator_block(const EigenSystem& eig, const ComplexMatrix& hprime,
                              const FilterFunction& filter) {
  ComplexMatrix hp = eigenbasis(eig, hprime);
  const auto n = hp.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < n; ++j) hp(j, k) *= filter.transfer(eig.energies(j) - eig.energies(k));
  return eig.vectors * hp * eig.vectors.adjoint();
}

FlowGenerator generator_frequency(const EigenSystem& eig, const ComplexMatrix& hprime,
                                  const FilterFunction& filter, double lambda) {
  FlowGenerator g;
  g.lambda = lambda;
  g.construction = Construction::frequency;
  g.gamma = filter.gamma();
  g.d = generator_block(eig, hprime, filter);
  return g;
}

std::vector<Complex> time_domain_transfer(const std::vector<double>& omegas,
                                          const FilterFunction& filter) {
  if (!filter.has_time_samples())
    throw ValidationError("time-domain generator: filter has no time samples");
  const auto w = filter.time_samples();
  std::vector<double> weight(w.begin(), w.end());
  weight.front() *= 0.5;
  weight.back() *= 0.5;
  std::vector<double> acc(omegas.size());
  simd::kernels().time_transfer(omegas.data(), omegas.size(), weight.data(), weight.size(),
                                filter.dt(), acc.data());
  std::vector<Complex> out(omegas.size());
  // M(omega) = int w(t) I(t) dt over [-T, T] = 2 i int_0^T w(t) Im I(t) dt.
  for (std::size_t m = 0; m < omegas.size(); ++m) out[m] = Complex(0.0, 2.0 * filter.dt() * acc[m]);
  return out;
}

FlowGenerator generator_time(const EigenSystem& eig, const ComplexMatrix& hprime,
                             const FilterFunction& filter, double lambda) {
  ComplexMatrix hp = eigenbasis(eig, hprime);
  const auto n = hp.rows();
  std::vector<double> omegas;
  omegas.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j < k; ++j) omegas.push_back(eig.energies(j) - eig.energies(k));
  const auto m = time_domain_transfer(omegas, filter);
  std::size_t idx = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j, ++idx) {
      hp(j, k) *= m[idx];
      hp(k, j) *= -m[idx];  // M is odd
    }
    hp(k, k) = 0.0;
  }
  FlowGenerator g;
  g.lambda = lambda;
  g.construction = Construction::time;
  g.gamma = filter.gamma();
  g.t_max = filter.t_max();
  g.dt = filter.dt();
  g.d = eig.vectors * hp * eig.vectors.adjoint();
  const ComplexMatrix reference = generator_block(eig, hprime, filter);
  const double scale = frobenius_norm(reference);
  g.disagreement = frobenius_norm(g.d - reference) / (scale > 0.0 ? scale : 1.0);
  return g;
}

FlowGenerator flow_generator(const Model& model, double lambda, const FilterFunction& filter,
                             bool use_sectors) {
  const ComplexMatrix h = assemble_hamiltonian(model, lambda);
  const ComplexMatrix hprime = assemble_derivative(model, lambda);
  const SectorDecomposition sectors =
      use_sectors ? model_sectors(model) : SectorDecomposition(model.geometry.dimension());
  sectors.require_commutes(h, 1e-12, "flow generator Hamiltonian");
  sectors.require_commutes(hprime, 1e-12, "flow generator derivative");
  FlowGenerator g;
  g.lambda = lambda;
  g.construction = Construction::frequency;
  g.gamma = filter.gamma();
  g.d = ComplexMatrix::Zero(h.rows(), h.cols());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const EigenSystem eig = hermitian_eigensystem(sectors.project(h, s));
    sectors.add_block(g.d, generator_block(eig, sectors.project(hprime, s), filter), s);
  }
  return g;
}

FlowGenerator anchored_generator(const Model& model, double lambda, const FilterFunction& filter,
                                 int anchor) {
  model.require_lambda(lambda);
  model.geometry.require_subset(std::vector<int>{anchor}, "anchored generator");
  const std::size_t dim = model.geometry.dimension();
  ComplexMatrix hprime = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : model.terms)
    if (*std::ranges::min_element(t.support) == anchor)
      embed_add(hprime, LocalOperator{t.support, t.dphi(lambda)}, model.geometry);
  const EigenSystem eig = hermitian_eigensystem(assemble_hamiltonian(model, lambda));
  FlowGenerator g;
  g.lambda = lambda;
  g.construction = Construction::frequency;
  g.gamma = filter.gamma();
  g.d = generator_block(eig, hprime, filter);
  return g;
}

}  // namespace spinlab
