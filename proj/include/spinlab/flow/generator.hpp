#pragma once

#include <limits>
#include <string>

#include "spinlab/core/linalg.hpp"
#include "spinlab/core/sectors.hpp"
#include "spinlab/flow/filter.hpp"
#include "spinlab/models/model.hpp"

namespace spinlab {

enum class Construction { frequency, time };

struct FlowGenerator {
  double lambda = 0.0;
  ComplexMatrix d;
  Construction construction = Construction::frequency;
  double gamma = 0.0;
  double t_max = 0.0;  // time construction only
  double dt = 0.0;
  // Time construction: ||D_time - D_freq||_F / ||D_freq||_F; NaN otherwise.
  double disagreement = std::numeric_limits<double>::quiet_NaN();
};

// D_jk = W(E_j - E_k) H'_jk in the eigenbasis of H(lambda).
FlowGenerator generator_frequency(const EigenSystem& eig, const ComplexMatrix& hprime,
                                  const FilterFunction& filter, double lambda);

// D = int dt w(t) int_0^t du tau_u(H') by trapezoid quadrature on the
// filter's time grid. Also evaluates the frequency construction and records
// the relative disagreement.
FlowGenerator generator_time(const EigenSystem& eig, const ComplexMatrix& hprime,
                             const FilterFunction& filter, double lambda);

// Quadrature kernel of the time construction: M(omega) such that
// D_jk = M(E_j - E_k) H'_jk. Exposed for convergence studies.
std::vector<Complex> time_domain_transfer(const std::vector<double>& omegas,
                                          const FilterFunction& filter);

// Frequency-construction block W o (Q^dag H' Q) conjugated back by Q.
ComplexMatrix generator_block(const EigenSystem& eig, const ComplexMatrix& hprime,
                              const FilterFunction& filter);

// D(lambda) of a model, assembled sector by sector when use_sectors is set.
FlowGenerator flow_generator(const Model& model, double lambda, const FilterFunction& filter,
                             bool use_sectors = true);

// Piece of D sourced by the terms anchored at `anchor` (smallest support
// site). D is linear in H', so these pieces sum to D over all anchors.
FlowGenerator anchored_generator(const Model& model, double lambda, const FilterFunction& filter,
                                 int anchor);

}  // namespace spinlab
