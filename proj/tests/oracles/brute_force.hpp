#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "spinlab/core/linalg.hpp"
#include "spinlab/core/operators.hpp"
#include "spinlab/stabilizer/stabilizer.hpp"

// Exhaustive references for small stabilizer groups.
namespace oracle {

using Bits = std::vector<bool>;

// Every element of the group generated by `gens` (as x|z bit strings).
inline std::set<Bits> group_elements(const spinlab::StabilizerGroup& g) {
  const std::size_t n = g.n_qubits();
  std::set<Bits> elems{Bits(2 * n, false)};
  for (const auto& gen : g.generators()) {
    std::set<Bits> next = elems;
    for (Bits e : elems) {
      for (std::size_t q = 0; q < n; ++q) {
        e[q] = e[q] != gen.x[q];
        e[n + q] = e[n + q] != gen.z[q];
      }
      next.insert(e);
    }
    elems.swap(next);
  }
  return elems;
}

// Entropy of 2^-n sum_{s in S} s on region A: |A| - log2 |S_A| (in ln 2 units
// converted to nats), with S_A the elements supported inside A.
inline double entropy_by_enumeration(const spinlab::StabilizerGroup& g,
                                     const std::vector<std::size_t>& region) {
  const std::size_t n = g.n_qubits();
  std::vector<bool> in(n, false);
  for (auto q : region) in[q] = true;
  std::size_t inside = 0;
  for (const auto& e : group_elements(g)) {
    bool ok = true;
    for (std::size_t q = 0; q < n && ok; ++q)
      if (!in[q] && (e[q] || e[n + q])) ok = false;
    inside += ok;
  }
  return (static_cast<double>(region.size()) - std::log2(static_cast<double>(inside))) *
         std::log(2.0);
}

// Dense 2^n x 2^n matrix of a Pauli string (Y where both bits are set).
inline spinlab::ComplexMatrix pauli_matrix(const spinlab::PauliOperator& p) {
  spinlab::ComplexMatrix m = spinlab::identity(1);
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    spinlab::ComplexMatrix f = spinlab::identity(2);
    if (p.x[q] && p.z[q]) f = spinlab::ops::pauli_y();
    else if (p.x[q]) f = spinlab::ops::pauli_x();
    else if (p.z[q]) f = spinlab::ops::pauli_z();
    m = spinlab::kron(m, f);
  }
  return m;
}

}  // namespace oracle
