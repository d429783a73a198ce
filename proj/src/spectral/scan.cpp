#include "spinlab/spectral/scan.hpp"

#include <limits>

#include "spinlab/core/error.hpp"
#include "spinlab/core/parallel.hpp"

namespace spinlab {

namespace {

std::vector<Model> build_models(const ModelFactory& factory, const std::vector<int>& sizes) {
  std::vector<Model> models;
  models.reserve(sizes.size());
  for (int n : sizes) models.push_back(factory(n));
  return models;
}

std::size_t scan_workers(const std::vector<Model>& models) {
  std::size_t biggest = 1;
  for (const auto& m : models) biggest = std::max(biggest, m.geometry.dimension());
  // Hamiltonian plus one block copy and solver workspace.
  return memory_bounded_workers(3 * biggest * biggest * sizeof(Complex));
}

}  // namespace

std::vector<GapScanRow> gap_scan(const ModelFactory& factory, const std::vector<int>& sizes,
                                 const std::vector<double>& lambdas, const PatchPolicy& policy) {
  const auto models = build_models(factory, sizes);
  const std::size_t nl = lambdas.size();
  std::vector<GapScanRow> rows(sizes.size() * nl);
  parallel_for(rows.size(), [&](std::size_t idx) {
    const Model& model = models[idx / nl];
    GapScanRow& row = rows[idx];
    row.model = model.name;
    row.n = sizes[idx / nl];
    row.lambda = lambdas[idx % nl];
    try {
      const auto ms = model_spectrum(model, row.lambda, false);
      const PatchInfo info = resolve_patch(ms.spectrum.energies, policy);
      row.e0 = info.e0;
      row.gap = info.gap;
      row.m = info.m;
      row.split = info.split;
      row.patch_gap = info.patch_gap;
    } catch (const Error& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.e0 = row.gap = row.split = row.patch_gap = nan;
      row.m = 0;
      row.error = e.what();
    }
  }, scan_workers(models));
  return rows;
}

std::vector<SplittingRow> degeneracy_splitting(const ModelFactory& factory, double lambda,
                                               const std::vector<int>& sizes) {
  const auto models = build_models(factory, sizes);
  std::vector<SplittingRow> rows(sizes.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const auto ms = model_spectrum(models[i], lambda, false);
    const RealVector& e = ms.spectrum.energies;
    if (e.size() < 3) throw ValidationError("splitting: need at least three levels");
    rows[i] = SplittingRow{sizes[i], e(1) - e(0), e(2) - e(0)};
  }, scan_workers(models));
  return rows;
}

}  // namespace spinlab
