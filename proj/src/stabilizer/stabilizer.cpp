#include "spinlab/stabilizer/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "spinlab/core/error.hpp"
#include "spinlab/core/operators.hpp"

namespace spinlab {

PauliOperator PauliOperator::identity(std::size_t n) {
  return PauliOperator{std::vector<bool>(n, false), std::vector<bool>(n, false)};
}

PauliOperator PauliOperator::x_on(std::size_t n, const std::vector<std::size_t>& qubits) {
  auto p = identity(n);
  for (auto q : qubits) p.x.at(q) = !p.x.at(q);
  return p;
}

PauliOperator PauliOperator::z_on(std::size_t n, const std::vector<std::size_t>& qubits) {
  auto p = identity(n);
  for (auto q : qubits) p.z.at(q) = !p.z.at(q);
  return p;
}

bool PauliOperator::commutes_with(const PauliOperator& o) const {
  if (o.n_qubits() != n_qubits()) throw ValidationError("pauli: qubit count mismatch");
  bool form = false;
  for (std::size_t q = 0; q < x.size(); ++q) form ^= (x[q] && o.z[q]) != (z[q] && o.x[q]);
  return !form;
}

bool PauliOperator::supported_in(const std::vector<bool>& region) const {
  for (std::size_t q = 0; q < x.size(); ++q)
    if ((x[q] || z[q]) && !region[q]) return false;
  return true;
}

std::vector<std::size_t> PauliOperator::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < x.size(); ++q)
    if (x[q] || z[q]) out.push_back(q);
  return out;
}

StabilizerGroup::StabilizerGroup(std::size_t n_qubits, std::vector<PauliOperator> generators)
    : n_(n_qubits), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.x.size() != n_ || g.z.size() != n_)
      throw ValidationError("stabilizer group: generator has the wrong qubit count");
}

BitMatrix StabilizerGroup::matrix() const {
  BitMatrix m(generators_.size(), 2 * n_);
  for (std::size_t r = 0; r < generators_.size(); ++r)
    for (std::size_t q = 0; q < n_; ++q) {
      if (generators_[r].x[q]) m.set(r, q, true);
      if (generators_[r].z[q]) m.set(r, n_ + q, true);
    }
  return m;
}

std::size_t StabilizerGroup::rank() const { return gf2_rank(matrix()); }

bool StabilizerGroup::all_commute() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (!generators_[i].commutes_with(generators_[j])) return false;
  return true;
}

void StabilizerGroup::require_commuting() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (!generators_[i].commutes_with(generators_[j]))
        throw ValidationError("stabilizer group: generators " + std::to_string(i) + " and " +
                              std::to_string(j) + " anticommute");
}

StabilizerGroup toric_code_stabilizers(const CellComplex& c) {
  const std::size_t n = c.n_qubits();
  std::vector<PauliOperator> stars(c.n_vertices(), PauliOperator::identity(n));
  for (std::size_t e = 0; e < c.n_edges(); ++e) {
    const std::size_t q = c.qubit(e);
    if (q == CellComplex::npos) continue;
    const auto [a, b] = c.edge(e);
    stars[a].x[q] = !stars[a].x[q];
    stars[b].x[q] = !stars[b].x[q];
  }
  std::vector<PauliOperator> gens;
  for (std::size_t v = 0; v < c.n_vertices(); ++v)
    if (!c.is_relative_vertex(v) && !stars[v].support().empty()) gens.push_back(std::move(stars[v]));
  for (std::size_t f = 0; f < c.n_faces(); ++f) {
    auto p = PauliOperator::identity(n);
    for (std::size_t e : c.face(f)) {
      const std::size_t q = c.qubit(e);
      if (q != CellComplex::npos) p.z[q] = !p.z[q];
    }
    if (!p.support().empty()) gens.push_back(std::move(p));
  }
  StabilizerGroup group(n, std::move(gens));
  try {
    group.require_commuting();
  } catch (const ValidationError& e) {
    throw ValidationError(c.name() + ": commutation violation (" + e.what() + ")");
  }
  return group;
}

std::size_t logical_qubits(const StabilizerGroup& group) {
  group.require_commuting();
  return group.n_qubits() - group.rank();
}

std::uint64_t ground_degeneracy(const StabilizerGroup& group) {
  const std::size_t k = logical_qubits(group);
  if (k >= 64) throw NumericalError("ground degeneracy: 2^" + std::to_string(k) + " overflows");
  return std::uint64_t{1} << k;
}

namespace {

std::vector<bool> region_mask(const StabilizerGroup& group, const std::vector<std::size_t>& region) {
  std::vector<bool> mask(group.n_qubits(), false);
  for (auto q : region) {
    if (q >= group.n_qubits()) throw ValidationError("stabilizer entropy: qubit outside the system");
    if (mask[q]) throw ValidationError("stabilizer entropy: repeated qubit in region");
    mask[q] = true;
  }
  return mask;
}

bool symplectic(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::size_t n) {
  // <a, b> = a_x . b_z + a_z . b_x, bits [0, n) are x and [n, 2n) are z.
  bool acc = false;
  for (std::size_t q = 0; q < n; ++q) {
    const bool ax = (a[q / 64] >> (q % 64)) & 1u;
    const bool az = (a[(n + q) / 64] >> ((n + q) % 64)) & 1u;
    const bool bx = (b[q / 64] >> (q % 64)) & 1u;
    const bool bz = (b[(n + q) / 64] >> ((n + q) % 64)) & 1u;
    acc ^= (ax && bz) != (az && bx);
  }
  return acc;
}

// Entropy in units of ln 2.
long entropy_bits(const StabilizerGroup& group, const std::vector<std::size_t>& region) {
  const auto mask = region_mask(group, region);
  const std::size_t n = group.n_qubits();
  std::vector<std::size_t> outside;
  for (std::size_t q = 0; q < n; ++q)
    if (!mask[q]) {
      outside.push_back(q);
      outside.push_back(n + q);
    }
  const BitMatrix m = group.matrix();
  const std::size_t inside_rank = gf2_rank(m) - gf2_rank(m.columns(outside));
  return static_cast<long>(region.size()) - static_cast<long>(inside_rank);
}

}  // namespace

double stabilizer_entropy(const StabilizerGroup& group, const std::vector<std::size_t>& region) {
  return static_cast<double>(entropy_bits(group, region)) * std::numbers::ln2;
}

StabilizerGroup purify(const StabilizerGroup& group) {
  group.require_commuting();
  const std::size_t n = group.n_qubits();
  BitMatrix basis = gf2_row_basis(group.matrix());
  const std::size_t r = basis.rows();

  // Centralizer: v with <g, v> = 0 for every generator, i.e. the null space
  // of the generator matrix with its x and z halves swapped.
  BitMatrix swapped(r, 2 * n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t q = 0; q < n; ++q) {
      if (basis.get(i, q)) swapped.set(i, n + q, true);
      if (basis.get(i, n + q)) swapped.set(i, q, true);
    }
  const BitMatrix centralizer = gf2_nullspace(swapped);

  // Logical representatives: centralizer vectors independent of the group.
  BitMatrix extended = basis;
  std::vector<std::vector<std::uint64_t>> logicals;
  std::size_t rank = r;
  for (std::size_t i = 0; i < centralizer.rows(); ++i) {
    BitMatrix trial = extended;
    trial.append_row(centralizer.row(i));
    if (gf2_rank(trial) > rank) {
      extended = std::move(trial);
      ++rank;
      logicals.emplace_back(centralizer.row(i).begin(), centralizer.row(i).end());
    }
  }

  // Symplectic Gram-Schmidt; keep the first member of every pair.
  std::vector<PauliOperator> gens = group.generators();
  while (!logicals.empty()) {
    const auto v = logicals.front();
    auto partner = std::ranges::find_if(logicals.begin() + 1, logicals.end(),
                                        [&](const auto& w) { return symplectic(v, w, n); });
    if (partner == logicals.end()) throw NumericalError("purify: logical space is degenerate");
    const auto w = *partner;
    logicals.erase(partner);
    logicals.erase(logicals.begin());
    for (auto& u : logicals) {
      const bool uw = symplectic(u, w, n);
      const bool uv = symplectic(u, v, n);
      if (uw)
        for (std::size_t k = 0; k < u.size(); ++k) u[k] ^= v[k];
      if (uv)
        for (std::size_t k = 0; k < u.size(); ++k) u[k] ^= w[k];
    }
    auto p = PauliOperator::identity(n);
    for (std::size_t q = 0; q < n; ++q) {
      p.x[q] = (v[q / 64] >> (q % 64)) & 1u;
      p.z[q] = (v[(n + q) / 64] >> ((n + q) % 64)) & 1u;
    }
    gens.push_back(std::move(p));
  }
  StabilizerGroup out(n, std::move(gens));
  out.require_commuting();
  if (out.rank() != n) throw NumericalError("purify: result is not maximal");
  return out;
}

double topological_entropy(const StabilizerGroup& group, const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b, const std::vector<std::size_t>& c) {
  std::set<std::size_t> seen;
  for (const auto* part : {&a, &b, &c})
    for (auto q : *part)
      if (!seen.insert(q).second)
        throw ValidationError("topological entropy: regions must be pairwise disjoint");
  if (a.empty() || b.empty() || c.empty())
    throw ValidationError("topological entropy: regions must be nonempty");
  auto join = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  // Integer combination first, so the result is an exact multiple of ln 2.
  auto s = [&](const std::vector<std::size_t>& region) { return entropy_bits(group, region); };
  const long combination = s(a) + s(b) + s(c) - s(join(a, b)) - s(join(b, c)) - s(join(a, c)) +
                           s(join(join(a, b), c));
  return static_cast<double>(-combination) * std::numbers::ln2;
}

Tripartition disk_tripartition(int lx, int ly, int cx, int cy, double radius) {
  if (lx < 2 || ly < 2) throw ValidationError("tripartition: torus too small");
  auto wrap = [](double d, int l) {
    d = std::fmod(d, static_cast<double>(l));
    if (d < -0.5 * l) d += l;
    if (d >= 0.5 * l) d -= l;
    return d;
  };
  Tripartition out;
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x)
      for (int dir = 0; dir < 2; ++dir) {
        const double mx = x + (dir == 0 ? 0.5 : 0.0);
        const double my = y + (dir == 1 ? 0.5 : 0.0);
        const double dx = wrap(mx - cx, lx);
        const double dy = wrap(my - cy, ly);
        if (std::hypot(dx, dy) > radius) continue;
        double theta = std::atan2(dy, dx);
        if (theta < 0.0) theta += 2.0 * std::numbers::pi;
        const int sector = std::min(2, static_cast<int>(theta / (2.0 * std::numbers::pi / 3.0)));
        const auto q = static_cast<std::size_t>(2 * (y * lx + x) + dir);
        (sector == 0 ? out.a : sector == 1 ? out.b : out.c).push_back(q);
      }
  return out;
}

StabilizerGroup product_state_group(std::size_t n) {
  std::vector<PauliOperator> gens;
  for (std::size_t q = 0; q < n; ++q) gens.push_back(PauliOperator::z_on(n, {q}));
  return StabilizerGroup(n, std::move(gens));
}

StabilizerGroup bell_chain_group(std::size_t pairs) {
  const std::size_t n = 2 * pairs;
  std::vector<PauliOperator> gens;
  for (std::size_t i = 0; i < pairs; ++i) {
    gens.push_back(PauliOperator::x_on(n, {2 * i, 2 * i + 1}));
    gens.push_back(PauliOperator::z_on(n, {2 * i, 2 * i + 1}));
  }
  return StabilizerGroup(n, std::move(gens));
}

Model stabilizer_hamiltonian(const CellComplex& complex) {
  const StabilizerGroup group = toric_code_stabilizers(complex);
  const std::size_t n = group.n_qubits();
  std::set<std::pair<int, int>> adjacency;
  for (const auto& g : group.generators()) {
    const auto sup = g.support();
    for (std::size_t i = 0; i < sup.size(); ++i)
      for (std::size_t j = i + 1; j < sup.size(); ++j)
        adjacency.emplace(static_cast<int>(sup[i]) + 1, static_cast<int>(sup[j]) + 1);
  }
  std::vector<int> ids(n);
  for (std::size_t q = 0; q < n; ++q) ids[q] = static_cast<int>(q) + 1;
  auto geometry = LatticeGeometry::from_graph(ids, std::vector<int>(n, 2),
                                              {adjacency.begin(), adjacency.end()}, "qubit-graph");

  std::vector<InteractionTerm> terms;
  for (const auto& g : group.generators()) {
    const auto sup = g.support();
    ComplexMatrix m = identity(1);
    std::vector<int> sites;
    bool star = false;
    for (auto q : sup) {
      sites.push_back(static_cast<int>(q) + 1);
      const ComplexMatrix p = g.x[q] && g.z[q] ? ops::pauli_y() : g.x[q] ? ops::pauli_x() : ops::pauli_z();
      star = star || g.x[q];
      m = kron(m, p);
    }
    terms.push_back(constant_term(std::move(sites), -m, star ? "star" : "plaquette"));
  }
  Model model{.name = "toric",
              .geometry = geometry,
              .terms = std::move(terms),
              .range = 2,
              .lambda_min = 0.0,
              .lambda_max = 1.0,
              .default_lambda = 0.0,
              .parameters = {{"qubits", static_cast<double>(n)}},
              .symmetries = {}};
  return finalize_model(std::move(model));
}

}  // namespace spinlab
