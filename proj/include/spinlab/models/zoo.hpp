#pragma once

#include <vector>

#include "spinlab/models/model.hpp"

namespace spinlab {

// H = -sum_<ij> sx_i sx_j - lambda sum_i sz_i.
Model tfim(int n, BoundaryCondition bc = BoundaryCondition::open,
           double lambda_min = 0.0, double lambda_max = 10.0);

// H = -sum_<ij> [(1+g)/2 sx sx + (1-g)/2 sy sy] - lambda sum_i sz_i, with
// anisotropy g; lambda is the transverse field, `field` its default value.
Model xy_chain(int n, double anisotropy, double field,
               BoundaryCondition bc = BoundaryCondition::open);

// Spin-1 chain, H = sum_i [S_i.S_{i+1}/2 + (S_i.S_{i+1})^2/6 + 1/3]: a sum of
// projectors onto total spin 2 of each bond. lambda-independent.
Model aklt(int n, BoundaryCondition bc = BoundaryCondition::open);

// The AKLT chain plus a staggered field lambda * sum_i (-1)^i S^z_i.
Model aklt_staggered_field(int n, double field_max,
                           BoundaryCondition bc = BoundaryCondition::open);

// Straight-line path H(s) = (1-s) H0 + s H1 between two models evaluated at
// their default parameters (or the given ones); s in [0, 1].
Model interpolate(const Model& model0, const Model& model1);
Model interpolate(const Model& model0, double lambda0, const Model& model1, double lambda1);

// Adds terms to a model and returns the result under a new name.
Model with_terms(const Model& base, std::vector<InteractionTerm> extra, std::string name);

// Basis symmetries for chains of spins.
BasisSymmetry parity_symmetry(const LatticeGeometry& geometry);        // prod sigma^z
BasisSymmetry magnetization_symmetry(const LatticeGeometry& geometry); // 2 S^z_total
BasisSymmetry reflection_symmetry(const LatticeGeometry& geometry);    // site i <-> n+1-i

}  // namespace spinlab
