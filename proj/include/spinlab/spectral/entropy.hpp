#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spinlab/core/linalg.hpp"
#include "spinlab/models/model.hpp"

namespace spinlab {

// von Neumann entropy in nats; eigenvalues <= 0 contribute nothing.
// Throws ValidationError unless rho is a density matrix within 1e-10.
double entanglement_entropy(const ComplexMatrix& rho);

// Reduced density matrix of a pure state on `keep` (legs ascending).
ComplexMatrix reduced_density(const ComplexVector& psi, std::span<const int> keep,
                              const LatticeGeometry& geometry);

struct BlockEntropy {
  int length = 0;
  double entropy = 0.0;
};

// Entropies of the left blocks {1..l} of a chain for l = 1..n/2 (or the given
// lengths). Without an explicit state the ground state must be unique.
std::vector<BlockEntropy> area_law_scan(const Model& model, double lambda,
                                        const std::optional<ComplexVector>& state = std::nullopt,
                                        std::vector<int> lengths = {});

}  // namespace spinlab
