#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinlab/spectral/ground.hpp"

namespace spinlab {

using ModelFactory = std::function<Model(int n)>;

struct GapScanRow {
  std::string model;
  int n = 0;
  double lambda = 0.0;
  double e0 = 0.0;
  double gap = 0.0;
  std::size_t m = 0;
  double split = 0.0;
  double patch_gap = 0.0;
  std::string error;  // empty on success; the numeric fields are NaN otherwise

  bool ok() const { return error.empty(); }
};

// One row per (size, lambda), sizes outermost. Failures are recorded in the
// row instead of aborting the scan.
std::vector<GapScanRow> gap_scan(const ModelFactory& factory, const std::vector<int>& sizes,
                                 const std::vector<double>& lambdas, const PatchPolicy& policy);

struct SplittingRow {
  int n = 0;
  double e1_minus_e0 = 0.0;
  double e2_minus_e0 = 0.0;
};

std::vector<SplittingRow> degeneracy_splitting(const ModelFactory& factory, double lambda,
                                               const std::vector<int>& sizes);

}  // namespace spinlab
