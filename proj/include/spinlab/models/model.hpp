#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spinlab/core/geometry.hpp"
#include "spinlab/core/linalg.hpp"
#include "spinlab/core/sectors.hpp"

namespace spinlab {

// Parametrised interaction Phi(X, lambda) with its lambda-derivative.
struct InteractionTerm {
  std::vector<int> support;
  std::function<ComplexMatrix(double)> phi;
  std::function<ComplexMatrix(double)> dphi;
  std::string label;
};

InteractionTerm constant_term(std::vector<int> support, ComplexMatrix m, std::string label = {});
// c0 * m0 + lambda * m1
InteractionTerm affine_term(std::vector<int> support, ComplexMatrix m0, ComplexMatrix m1,
                            std::string label = {});

struct Model {
  std::string name;
  LatticeGeometry geometry;
  std::vector<InteractionTerm> terms;
  // Finite range: every support has diameter < range.
  int range = 1;
  double lambda_min = 0.0;
  double lambda_max = 1.0;
  // Parameter used when the model appears as a fixed endpoint of a path.
  double default_lambda = 0.0;
  // Uniform bound on ||phi(lambda)|| sampled over the declared range.
  double term_bound = 0.0;
  std::map<std::string, double> parameters;
  // Basis symmetries of every term for every lambda; used to block-diagonalise.
  std::vector<BasisSymmetry> symmetries;

  void require_lambda(double lambda) const;
};

// Validates supports, finite range, and Hermiticity at sampled lambda and
// records the sampled term bound.
Model finalize_model(Model m);

ComplexMatrix assemble_hamiltonian(const Model& model, double lambda);
ComplexMatrix assemble_derivative(const Model& model, double lambda);

SectorDecomposition model_sectors(const Model& model);

// Product of per-site unitaries, one per site in canonical order.
struct SymmetryAction {
  std::vector<ComplexMatrix> site_unitaries;

  static SymmetryAction uniform(const LatticeGeometry& geometry, const ComplexMatrix& u);
  ComplexMatrix restricted(std::span<const int> support, const LatticeGeometry& geometry) const;
  ComplexMatrix global(const LatticeGeometry& geometry) const;
};

// max over terms and sampled lambda of ||u_X phi u_X^dag - phi||.
double verify_symmetry(const Model& model, const SymmetryAction& pi,
                       std::span<const double> lambdas);

}  // namespace spinlab
