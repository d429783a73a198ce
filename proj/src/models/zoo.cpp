#include "spinlab/models/zoo.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "spinlab/core/error.hpp"
#include "spinlab/core/operators.hpp"

namespace spinlab {

namespace {

// Nearest-neighbour bonds (i, i+1), plus (n, 1) on rings with more than two sites.
std::vector<std::pair<int, int>> chain_bonds(int n, BoundaryCondition bc) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 1; i < n; ++i) bonds.emplace_back(i, i + 1);
  if (bc == BoundaryCondition::periodic && n > 2) bonds.emplace_back(n, 1);
  return bonds;
}

std::string bond_label(const char* kind, int a, int b) {
  return std::string(kind) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string site_label(const char* kind, int a) {
  return std::string(kind) + "(" + std::to_string(a) + ")";
}

// Digits of a basis index, most significant first.
std::vector<int> digits(std::size_t index, std::span<const int> dims) {
  std::vector<int> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = static_cast<int>(index % static_cast<std::size_t>(dims[k]));
    index /= static_cast<std::size_t>(dims[k]);
  }
  return out;
}

std::vector<BasisSymmetry> chain_symmetries(const LatticeGeometry& g, bool parity,
                                            bool magnetization, bool reflection) {
  std::vector<BasisSymmetry> out;
  if (parity) out.push_back(parity_symmetry(g));
  if (magnetization) out.push_back(magnetization_symmetry(g));
  if (reflection) out.push_back(reflection_symmetry(g));
  return out;
}

}  // namespace

Model tfim(int n, BoundaryCondition bc, double lambda_min, double lambda_max) {
  auto geometry = LatticeGeometry::chain(n, bc);
  const ComplexMatrix xx = -kron(ops::pauli_x(), ops::pauli_x());
  const ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  const ComplexMatrix field = -ops::pauli_z();

  std::vector<InteractionTerm> terms;
  for (auto [a, b] : chain_bonds(n, bc)) terms.push_back(constant_term({a, b}, xx, bond_label("xx", a, b)));
  for (int i = 1; i <= n; ++i) terms.push_back(affine_term({i}, zero, field, site_label("z", i)));

  Model m{.name = "tfim",
          .geometry = geometry,
          .terms = std::move(terms),
          .range = 2,
          .lambda_min = lambda_min,
          .lambda_max = lambda_max,
          .default_lambda = std::clamp(1.0, lambda_min, lambda_max),
          .parameters = {{"N", static_cast<double>(n)}, {"periodic", bc == BoundaryCondition::periodic ? 1.0 : 0.0}},
          .symmetries = chain_symmetries(geometry, true, false, n > 1)};
  return finalize_model(std::move(m));
}

Model xy_chain(int n, double anisotropy, double field, BoundaryCondition bc) {
  if (n < 2) throw ValidationError("xy_chain: need at least two sites");
  auto geometry = LatticeGeometry::chain(n, bc);
  const ComplexMatrix bond =
      -(0.5 * (1.0 + anisotropy)) * kron(ops::pauli_x(), ops::pauli_x()) -
      (0.5 * (1.0 - anisotropy)) * kron(ops::pauli_y(), ops::pauli_y());
  const ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  const ComplexMatrix z = -ops::pauli_z();

  std::vector<InteractionTerm> terms;
  for (auto [a, b] : chain_bonds(n, bc)) terms.push_back(constant_term({a, b}, bond, bond_label("xy", a, b)));
  for (int i = 1; i <= n; ++i) terms.push_back(affine_term({i}, zero, z, site_label("z", i)));

  Model m{.name = "xy",
          .geometry = geometry,
          .terms = std::move(terms),
          .range = 2,
          .lambda_min = std::min(0.0, field),
          .lambda_max = std::max(10.0, field),
          .default_lambda = field,
          .parameters = {{"N", static_cast<double>(n)}, {"anisotropy", anisotropy}, {"field", field},
                         {"periodic", bc == BoundaryCondition::periodic ? 1.0 : 0.0}},
          .symmetries = chain_symmetries(geometry, true, anisotropy == 0.0, true)};
  return finalize_model(std::move(m));
}

namespace {

ComplexMatrix aklt_bond() {
  const ComplexMatrix ss = kron(ops::spin1_x(), ops::spin1_x()) +
                           kron(ops::spin1_y(), ops::spin1_y()) +
                           kron(ops::spin1_z(), ops::spin1_z());
  return 0.5 * ss + (1.0 / 6.0) * ss * ss + (1.0 / 3.0) * identity(9);
}

}  // namespace

Model aklt(int n, BoundaryCondition bc) {
  if (n < 2) throw ValidationError("aklt: need at least two sites");
  auto geometry = LatticeGeometry::chain(n, bc, 3);
  const ComplexMatrix bond = aklt_bond();
  std::vector<InteractionTerm> terms;
  for (auto [a, b] : chain_bonds(n, bc)) terms.push_back(constant_term({a, b}, bond, bond_label("P2", a, b)));
  Model m{.name = "aklt",
          .geometry = geometry,
          .terms = std::move(terms),
          .range = 2,
          .lambda_min = 0.0,
          .lambda_max = 1.0,
          .default_lambda = 0.0,
          .parameters = {{"N", static_cast<double>(n)}, {"periodic", bc == BoundaryCondition::periodic ? 1.0 : 0.0}},
          .symmetries = chain_symmetries(geometry, false, true, true)};
  return finalize_model(std::move(m));
}

Model aklt_staggered_field(int n, double field_max, BoundaryCondition bc) {
  Model base = aklt(n, bc);
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  std::vector<InteractionTerm> extra;
  for (int i = 1; i <= n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    extra.push_back(affine_term({i}, zero, sign * ops::spin1_z(), site_label("stagger", i)));
  }
  Model m = with_terms(base, std::move(extra), "aklt-staggered");
  m.lambda_min = std::min(0.0, field_max);
  m.lambda_max = std::max(0.0, field_max);
  m.default_lambda = 0.0;
  m.parameters["field_max"] = field_max;
  // The staggered pattern is reflection-even only for odd n; S^z_total survives always.
  m.symmetries = chain_symmetries(m.geometry, false, true, n % 2 == 1);
  return finalize_model(std::move(m));
}

Model with_terms(const Model& base, std::vector<InteractionTerm> extra, std::string name) {
  Model m = base;
  m.name = std::move(name);
  for (auto& t : extra) m.terms.push_back(std::move(t));
  int range = m.range;
  for (const auto& t : m.terms) range = std::max(range, m.geometry.diameter(t.support) + 1);
  m.range = range;
  m.symmetries.clear();
  return finalize_model(std::move(m));
}

Model interpolate(const Model& model0, const Model& model1) {
  return interpolate(model0, model0.default_lambda, model1, model1.default_lambda);
}

Model interpolate(const Model& model0, double lambda0, const Model& model1, double lambda1) {
  const auto& g0 = model0.geometry;
  const auto& g1 = model1.geometry;
  if (!std::ranges::equal(g0.sites(), g1.sites()) ||
      !std::ranges::equal(g0.local_dims(), g1.local_dims()))
    throw ValidationError("interpolate: geometries differ");
  for (int a : g0.sites())
    for (int b : g0.sites())
      if (g0.distance(a, b) != g1.distance(a, b))
        throw ValidationError("interpolate: geometries differ");
  model0.require_lambda(lambda0);
  model1.require_lambda(lambda1);

  // Endpoint operators grouped by canonical support, in first-seen order.
  std::vector<std::vector<int>> order;
  std::map<std::vector<int>, std::pair<ComplexMatrix, ComplexMatrix>> merged;
  auto collect = [&](const Model& model, double lambda, bool first) {
    for (const auto& term : model.terms) {
      const LocalOperator op = canonicalize(LocalOperator{term.support, term.phi(lambda)}, g0);
      auto it = merged.find(op.support);
      if (it == merged.end()) {
        const auto d = op.matrix.rows();
        it = merged.emplace(op.support, std::pair{ComplexMatrix::Zero(d, d).eval(),
                                                   ComplexMatrix::Zero(d, d).eval()}).first;
        order.push_back(op.support);
      }
      (first ? it->second.first : it->second.second) += op.matrix;
    }
  };
  collect(model0, lambda0, true);
  collect(model1, lambda1, false);

  std::vector<InteractionTerm> terms;
  for (const auto& support : order) {
    const auto& [a, b] = merged.at(support);
    terms.push_back(InteractionTerm{
        support,
        [a, b](double s) -> ComplexMatrix {
          if (s == 0.0) return a;
          if (s == 1.0) return b;
          return (1.0 - s) * a + s * b;
        },
        [d = (b - a).eval()](double) { return d; },
        "path"});
  }

  std::vector<BasisSymmetry> shared;
  for (const auto& s0 : model0.symmetries)
    for (const auto& s1 : model1.symmetries)
      if (s0.name == s1.name) shared.push_back(s0);

  Model m{.name = "interpolated",
          .geometry = g0,
          .terms = std::move(terms),
          .range = std::max(model0.range, model1.range),
          .lambda_min = 0.0,
          .lambda_max = 1.0,
          .default_lambda = 0.0,
          .parameters = {{"lambda0", lambda0}, {"lambda1", lambda1}},
          .symmetries = std::move(shared)};
  return finalize_model(std::move(m));
}

BasisSymmetry parity_symmetry(const LatticeGeometry& geometry) {
  for (int d : geometry.local_dims())
    if (d != 2) throw ValidationError("parity symmetry needs spin-1/2 sites");
  std::vector<int> labels(geometry.dimension());
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] = std::popcount(i) % 2;
  return BasisSymmetry::diagonal("parity", std::move(labels));
}

BasisSymmetry magnetization_symmetry(const LatticeGeometry& geometry) {
  const auto dims = geometry.local_dims();
  std::vector<int> labels(geometry.dimension());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto dig = digits(i, dims);
    int twice_sz = 0;
    for (std::size_t k = 0; k < dig.size(); ++k) twice_sz += dims[k] - 1 - 2 * dig[k];
    labels[i] = twice_sz;
  }
  return BasisSymmetry::diagonal("2Sz", std::move(labels));
}

BasisSymmetry reflection_symmetry(const LatticeGeometry& geometry) {
  const auto dims = geometry.local_dims();
  const auto sites = geometry.sites();
  const std::size_t n = sites.size();
  for (int d : dims)
    if (d != dims[0]) throw ValidationError("reflection needs equal local dimensions");
  // The map i <-> n+1-i must be an isometry of the metric.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (geometry.distance(sites[a], sites[b]) !=
          geometry.distance(sites[n - 1 - a], sites[n - 1 - b]))
        throw ValidationError("reflection is not an isometry of this geometry");
  std::vector<std::size_t> image(geometry.dimension());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const auto dig = digits(i, dims);
    std::size_t j = 0;
    for (std::size_t k = n; k-- > 0;) j = j * static_cast<std::size_t>(dims[k]) + static_cast<std::size_t>(dig[k]);
    image[i] = j;
  }
  return BasisSymmetry::involution("reflection", std::move(image));
}

}  // namespace spinlab
