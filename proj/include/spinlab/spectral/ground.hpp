#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spinlab/core/linalg.hpp"
#include "spinlab/core/sectors.hpp"
#include "spinlab/models/model.hpp"

namespace spinlab {

// How the ground patch is chosen: an explicit size m, or the cluster of
// levels within delta of E0. With neither set, delta = 1e-8 * ||H||.
struct PatchPolicy {
  std::optional<std::size_t> m;
  std::optional<double> delta;

  static PatchPolicy explicit_size(std::size_t m) { return {m, std::nullopt}; }
  static PatchPolicy cluster(double delta) { return {std::nullopt, delta}; }
};

struct PatchInfo {
  double e0 = 0.0;
  std::size_t m = 0;
  double split = 0.0;      // E_{m-1} - E_0
  double patch_gap = 0.0;  // E_m - E_{m-1}
  double gap = 0.0;        // E_1 - E_0
};

// Throws PatchNotIsolatedError when no level separates the patch from the
// rest of the spectrum (or when patch_gap <= split).
PatchInfo resolve_patch(const RealVector& energies, const PatchPolicy& policy);

struct GroundData : PatchInfo {
  ComplexMatrix vectors;    // dim x m, orthonormal
  ComplexMatrix projector;  // dim x dim
};

GroundData ground_data(const EigenSystem& eig, const PatchPolicy& policy);

// Spectrum of H(lambda), block-diagonalised by the model's basis symmetries.
struct ModelSpectrum {
  SectorDecomposition sectors;
  SectorSpectrum spectrum;
  double h_norm = 0.0;
};

ModelSpectrum model_spectrum(const Model& model, double lambda, bool with_vectors);

GroundData ground_data(const ModelSpectrum& spectrum, const PatchPolicy& policy);
GroundData model_ground_data(const Model& model, double lambda, const PatchPolicy& policy);

// ||P A P - (Tr(P A P) / Tr P) P|| with A = embed(a).
double local_order_test(const ComplexMatrix& projector, const LocalOperator& a,
                        const LatticeGeometry& geometry);

}  // namespace spinlab
