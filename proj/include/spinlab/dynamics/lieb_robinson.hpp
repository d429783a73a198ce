#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlab/core/linalg.hpp"
#include "spinlab/models/model.hpp"

namespace spinlab {

struct LRSample {
  int d = 0;
  double t = 0.0;
  double c = 0.0;
};

struct LRScanOptions {
  // Use the symmetry-sector evaluation when the observables allow it.
  bool allow_sector_path = true;
};

struct LRScan {
  std::vector<LRSample> samples;
  double norm_bound = 0.0;  // 2 ||a|| ||b||
  bool sector_path = false;
};

// Copy of `b_template` translated along the site ids so that its first site
// sits `d` ids past the last site of a. Throws if the copy leaves the lattice
// or meets the support of a.
LocalOperator translated_copy(const LocalOperator& a, const LocalOperator& b_template, int d,
                              const LatticeGeometry& geometry);

// ||[a, tau_t(b_d)]|| over the full (distance, time) grid, distances outer.
// Sample distances are the metric distances d(X, Y) of the placed supports.
LRScan lr_commutator_scan(const Model& model, double lambda, const LocalOperator& a,
                          const LocalOperator& b_template, const std::vector<int>& distances,
                          const std::vector<double>& times, const LRScanOptions& options = {});

struct LRFit {
  double v = 0.0;
  double mu = 0.0;
  double c0 = 0.0;
  double residual = 0.0;  // RMS of ln c - model
  double epsilon = 0.0;
  std::size_t used = 0;
  // Front velocity from the arrival distances d*(t) where c crosses epsilon;
  // NaN when fewer than two fronts are resolved.
  double v_arrival = 0.0;
  // mu > 0; otherwise the cone was not resolved and v is meaningless.
  bool resolved = false;
};

// Least squares ln c = ln c0 - mu d + mu v |t| over samples with
// 1e-12 < c < min(epsilon, norm_bound). epsilon defaults to 1e-3 * norm_bound.
LRFit lr_fit(const std::vector<LRSample>& samples, double norm_bound,
             std::optional<double> epsilon = std::nullopt);

}  // namespace spinlab
