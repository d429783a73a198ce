#include "spinlab/models/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinlab/core/error.hpp"

namespace spinlab {

InteractionTerm constant_term(std::vector<int> support, ComplexMatrix m, std::string label) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  return InteractionTerm{
      std::move(support),
      [m = std::move(m)](double) { return m; },
      [rows, cols](double) -> ComplexMatrix { return ComplexMatrix::Zero(rows, cols); },
      std::move(label)};
}

InteractionTerm affine_term(std::vector<int> support, ComplexMatrix m0, ComplexMatrix m1,
                            std::string label) {
  if (m0.rows() != m1.rows() || m0.cols() != m1.cols())
    throw ValidationError("affine_term: matrix shapes differ");
  return InteractionTerm{
      std::move(support),
      [m0, m1](double lambda) -> ComplexMatrix { return m0 + lambda * m1; },
      [m1](double) { return m1; },
      std::move(label)};
}

void Model::require_lambda(double lambda) const {
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lambda_min), std::abs(lambda_max)));
  if (!std::isfinite(lambda) || lambda < lambda_min - slack || lambda > lambda_max + slack) {
    std::ostringstream os;
    os << name << ": lambda=" << lambda << " outside [" << lambda_min << ", " << lambda_max << "]";
    throw ValidationError(os.str());
  }
}

namespace {

std::vector<double> sample_lambdas(const Model& m) {
  std::vector<double> out;
  for (int k = 0; k < 5; ++k)
    out.push_back(m.lambda_min + (m.lambda_max - m.lambda_min) * k / 4.0);
  return out;
}

}  // namespace

Model finalize_model(Model m) {
  if (!(m.lambda_min <= m.lambda_max))
    throw ValidationError(m.name + ": empty lambda range");
  if (m.range < 1) throw ValidationError(m.name + ": range must be positive");
  const auto samples = sample_lambdas(m);
  double bound = 0.0;
  for (const auto& term : m.terms) {
    m.geometry.require_subset(term.support, "interaction term");
    if (term.support.empty()) throw ValidationError(m.name + ": term with empty support");
    if (m.geometry.diameter(term.support) >= m.range) {
      std::ostringstream os;
      os << m.name << ": term '" << term.label << "' has diameter "
         << m.geometry.diameter(term.support) << " >= range " << m.range;
      throw ValidationError(os.str());
    }
    const auto dim = static_cast<Eigen::Index>(m.geometry.dimension_of(term.support));
    for (double lambda : samples) {
      const ComplexMatrix phi = term.phi(lambda);
      const ComplexMatrix dphi = term.dphi(lambda);
      if (phi.rows() != dim || phi.cols() != dim || dphi.rows() != dim || dphi.cols() != dim)
        throw ValidationError(m.name + ": term '" + term.label + "' has the wrong dimension");
      require_hermitian(phi, "interaction term");
      require_hermitian(dphi, "interaction term derivative");
      bound = std::max(bound, spectral_norm(phi));
    }
  }
  m.term_bound = bound;
  return m;
}

ComplexMatrix assemble_hamiltonian(const Model& model, double lambda) {
  model.require_lambda(lambda);
  const auto dim = static_cast<Eigen::Index>(model.geometry.dimension());
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : model.terms)
    embed_add(h, LocalOperator{term.support, term.phi(lambda)}, model.geometry);
  return h;
}

ComplexMatrix assemble_derivative(const Model& model, double lambda) {
  model.require_lambda(lambda);
  const auto dim = static_cast<Eigen::Index>(model.geometry.dimension());
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& term : model.terms)
    embed_add(h, LocalOperator{term.support, term.dphi(lambda)}, model.geometry);
  return h;
}

SectorDecomposition model_sectors(const Model& model) {
  if (model.symmetries.empty()) return SectorDecomposition(model.geometry.dimension());
  return SectorDecomposition(model.geometry.dimension(), model.symmetries);
}

SymmetryAction SymmetryAction::uniform(const LatticeGeometry& geometry, const ComplexMatrix& u) {
  SymmetryAction a;
  for (int dim : geometry.local_dims()) {
    if (u.rows() != dim || u.cols() != dim)
      throw ValidationError("symmetry: site unitary has the wrong dimension");
    a.site_unitaries.push_back(u);
  }
  return a;
}

ComplexMatrix SymmetryAction::restricted(std::span<const int> support,
                                         const LatticeGeometry& geometry) const {
  if (site_unitaries.size() != geometry.n_sites())
    throw ValidationError("symmetry: one unitary per site required");
  ComplexMatrix out = identity(1);
  for (int site : support) out = kron(out, site_unitaries[geometry.position(site)]);
  return out;
}

ComplexMatrix SymmetryAction::global(const LatticeGeometry& geometry) const {
  std::vector<int> all(geometry.sites().begin(), geometry.sites().end());
  for (const auto& u : site_unitaries) {
    if (unitarity_error(u) > 1e-12) throw ValidationError("symmetry: site map is not unitary");
  }
  return restricted(all, geometry);
}

double verify_symmetry(const Model& model, const SymmetryAction& pi,
                       std::span<const double> lambdas) {
  double worst = 0.0;
  for (const auto& term : model.terms) {
    const ComplexMatrix u = pi.restricted(term.support, model.geometry);
    for (double lambda : lambdas) {
      model.require_lambda(lambda);
      const ComplexMatrix phi = term.phi(lambda);
      worst = std::max(worst, spectral_norm(u * phi * u.adjoint() - phi));
    }
  }
  return worst;
}

}  // namespace spinlab
