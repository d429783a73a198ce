#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/models/model.hpp"
#include "spinlab/stabilizer/cell_complex.hpp"
#include "spinlab/stabilizer/gf2.hpp"

namespace spinlab {

// Pauli operator up to phase: X^x Z^z on n qubits.
struct PauliOperator {
  std::vector<bool> x;
  std::vector<bool> z;

  static PauliOperator identity(std::size_t n);
  static PauliOperator x_on(std::size_t n, const std::vector<std::size_t>& qubits);
  static PauliOperator z_on(std::size_t n, const std::vector<std::size_t>& qubits);

  std::size_t n_qubits() const { return x.size(); }
  bool commutes_with(const PauliOperator& other) const;
  bool supported_in(const std::vector<bool>& region) const;
  // Qubits acted on nontrivially, ascending.
  std::vector<std::size_t> support() const;
};

class StabilizerGroup {
 public:
  StabilizerGroup(std::size_t n_qubits, std::vector<PauliOperator> generators);

  std::size_t n_qubits() const { return n_; }
  const std::vector<PauliOperator>& generators() const { return generators_; }
  // (#generators) x 2n, x bits then z bits.
  BitMatrix matrix() const;
  std::size_t rank() const;
  bool all_commute() const;
  void require_commuting() const;

 private:
  std::size_t n_;
  std::vector<PauliOperator> generators_;
};

// Star A_v = prod X over the qubit edges at v (vertices outside the relative
// subcomplex), plaquette B_p = prod Z over the qubit edges of p.
StabilizerGroup toric_code_stabilizers(const CellComplex& complex);

// n - rank, the number of logical qubits.
std::size_t logical_qubits(const StabilizerGroup& group);
// 2^(n - rank); throws for non-commuting generators or overflow.
std::uint64_t ground_degeneracy(const StabilizerGroup& group);

// Entropy of the code-space-averaged state 2^{-n} sum_{s in S} s on `region`:
// (|A| - (rank G - rank G|_{complement})) ln 2. Equals the pure-state value
// when the group has n independent generators.
double stabilizer_entropy(const StabilizerGroup& group, const std::vector<std::size_t>& region);

// Adds one logical operator per logical qubit (a commuting half of a
// symplectic basis of the logical space), giving a pure stabilizer state.
StabilizerGroup purify(const StabilizerGroup& group);

// gamma = -(S_A + S_B + S_C - S_AB - S_BC - S_AC + S_ABC); ln 2 for the toric code.
double topological_entropy(const StabilizerGroup& group, const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b, const std::vector<std::size_t>& c);

struct Tripartition {
  std::vector<std::size_t> a, b, c;
};

// Qubits whose edge midpoints lie within `radius` of vertex (cx, cy) on
// torus(Lx, Ly), split into three 120-degree sectors.
Tripartition disk_tripartition(int lx, int ly, int cx, int cy, double radius);

// Control groups: Z on every qubit, and Bell pairs (2i, 2i+1) with XX, ZZ.
StabilizerGroup product_state_group(std::size_t n);
StabilizerGroup bell_chain_group(std::size_t pairs);

// H = -sum_v A_v - sum_p B_p as a model on the qubit graph (qubits adjacent
// when they share a star or plaquette); sites are qubit index + 1.
Model stabilizer_hamiltonian(const CellComplex& complex);

}  // namespace spinlab
