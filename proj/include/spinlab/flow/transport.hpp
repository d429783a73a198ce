#pragma once

#include <optional>
#include <string>

#include "spinlab/flow/generator.hpp"
#include "spinlab/models/model.hpp"
#include "spinlab/spectral/ground.hpp"

namespace spinlab {

struct FlowOptions {
  std::size_t steps = 200;
  // Fixes the patch size at lambda0; the size is then held along the path.
  PatchPolicy patch;
  // Explicit gamma; otherwise gamma_fraction * (min patch gap on the grid).
  std::optional<double> gamma;
  double gamma_fraction = 0.9;
  // Throw GapClosedError when the patch gap drops below gamma somewhere.
  bool enforce_gap = true;
  // Block-diagonalise by the model's basis symmetries.
  bool use_sectors = true;
};

// V(lambda1 <- lambda0), the solution of V' = i D(lambda) V with V(lambda0) = I,
// by midpoint exponential steps V_{k+1} = exp(i h D(lambda_k + h/2)) V_k.
struct FlowUnitary {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::size_t steps = 0;
  double gamma = 0.0;
  std::size_t m = 0;
  double min_patch_gap = 0.0;
  double lambda_at_min = 0.0;
  std::string integrator = "midpoint-exponential";
  ComplexMatrix v;
};

FlowUnitary integrate_flow(const Model& path, double lambda0, double lambda1,
                           const FlowOptions& options = {});

// ||V P0 V^dag - P1||
double transport_check(const FlowUnitary& v, const GroundData& p0, const GroundData& p1);

double unitarity_residual(const FlowUnitary& v);

// alpha(a) = V^dag a V
ComplexMatrix apply_automorphism(const FlowUnitary& v, const ComplexMatrix& a);

// ||(P(lambda+h) - P(lambda-h)) / 2h - i[D(lambda), P(lambda)]||
double derivative_identity_check(const Model& model, double lambda, double gamma, double h,
                                 const PatchPolicy& patch = {}, bool use_sectors = true);

// ||[U_pi, m]||
double symmetry_commutation(const ComplexMatrix& m, const SymmetryAction& pi,
                            const LatticeGeometry& geometry);

}  // namespace spinlab
