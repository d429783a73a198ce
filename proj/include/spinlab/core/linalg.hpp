#pragma once

#include <span>
#include <vector>

#include "spinlab/core/geometry.hpp"
#include "spinlab/core/types.hpp"

namespace spinlab {

// Operator acting on `support`; tensor legs of `matrix` follow the order of
// `support` as given (which need not be sorted).
struct LocalOperator {
  std::vector<int> support;
  ComplexMatrix matrix;
};

// Ascending energies with orthonormal eigenvector columns.
struct EigenSystem {
  RealVector energies;
  ComplexMatrix vectors;

  std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
  // max_k ||h v_k - E_k v_k||
  double residual(const ComplexMatrix& h) const;
  // ||V^dag V - I||_max
  double orthonormality_error() const;
};

ComplexMatrix identity(std::size_t n);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Same operator with support sorted ascending and legs permuted to match.
LocalOperator canonicalize(const LocalOperator& op, const LatticeGeometry& geometry);

// op tensored with the identity on every other site.
ComplexMatrix embed(const LocalOperator& op, const LatticeGeometry& geometry);
// target += scale * embed(op); never materialises the embedded matrix.
void embed_add(ComplexMatrix& target, const LocalOperator& op,
               const LatticeGeometry& geometry, Complex scale = 1.0);

double frobenius_norm(const ComplexMatrix& a);
// ||a - a^dag||_F
double hermiticity_error(const ComplexMatrix& a);
bool is_real(const ComplexMatrix& a);

// Throws ValidationError if ||h - h^dag||_F > 1e-10 ||h||_F.
void require_hermitian(const ComplexMatrix& h, const char* what);

// Dense Hermitian eigensolver; real symmetric inputs take the real path.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);
RealVector hermitian_eigenvalues(const ComplexMatrix& h);

// Largest singular value, from the eigenvalues of a^dag a. Hermitian and
// anti-Hermitian inputs use the eigenvalues of a (resp. i a) directly.
double spectral_norm(const ComplexMatrix& a);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace over the complement of `keep`; result legs in ascending site order.
ComplexMatrix partial_trace(const ComplexMatrix& a, std::span<const int> keep,
                            const LatticeGeometry& geometry);

// (id_region (x) normalised trace on the complement)(a), re-embedded.
ComplexMatrix conditional_expectation(const ComplexMatrix& a,
                                      std::span<const int> region,
                                      const LatticeGeometry& geometry);

// exp(i s h) through the eigendecomposition of h.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double s);
ComplexMatrix unitary_exp(const EigenSystem& eig, double s);

// ||u^dag u - I||
double unitarity_error(const ComplexMatrix& u);

}  // namespace spinlab
