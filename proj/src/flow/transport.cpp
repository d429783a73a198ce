#include "spinlab/flow/transport.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spinlab/core/error.hpp"
#include "spinlab/core/parallel.hpp"

namespace spinlab {

namespace {

struct PointSpectrum {
  std::vector<EigenSystem> blocks;
  RealVector energies;
};

PointSpectrum point_spectrum(const Model& model, const SectorDecomposition& sectors,
                             double lambda, bool with_vectors) {
  const ComplexMatrix h = assemble_hamiltonian(model, lambda);
  sectors.require_commutes(h, 1e-12, "flow Hamiltonian");
  SectorSpectrum spectrum = sector_spectrum(h, sectors, with_vectors);
  return PointSpectrum{std::move(spectrum.blocks), std::move(spectrum.energies)};
}

struct GapSample {
  double lambda = 0.0;
  double gap = 0.0;
  bool isolated = false;
};

GapSample patch_gap_at(double lambda, const RealVector& e, std::size_t m) {
  const auto mi = static_cast<Eigen::Index>(m);
  if (mi >= e.size()) return {lambda, 0.0, false};
  const double gap = e(mi) - e(mi - 1);
  return {lambda, gap, gap > e(mi - 1) - e(0)};
}

[[noreturn]] void gap_closed(const GapSample& s, double gamma) {
  std::ostringstream os;
  os.precision(17);
  os << "gap closed along path at lambda=" << s.lambda << " (patch gap " << s.gap
     << (s.isolated ? "" : ", patch not isolated") << ", gamma " << gamma << ")";
  throw GapClosedError(os.str(), s.lambda, s.gap, gamma);
}

}  // namespace

FlowUnitary integrate_flow(const Model& path, double lambda0, double lambda1,
                           const FlowOptions& options) {
  path.require_lambda(lambda0);
  path.require_lambda(lambda1);
  const auto dim = static_cast<Eigen::Index>(path.geometry.dimension());
  FlowUnitary out;
  out.lambda0 = lambda0;
  out.lambda1 = lambda1;
  if (lambda0 == lambda1) {
    out.v = ComplexMatrix::Identity(dim, dim);
    out.gamma = options.gamma.value_or(0.0);
    return out;
  }
  if (options.steps == 0) throw ValidationError("flow: steps must be positive");
  if (options.gamma && !(*options.gamma > 0.0)) throw ValidationError("flow: gamma must be positive");
  if (!(options.gamma_fraction > 0.0 && options.gamma_fraction <= 1.0))
    throw ValidationError("flow: gamma fraction must lie in (0, 1]");

  const SectorDecomposition sectors =
      options.use_sectors ? model_sectors(path) : SectorDecomposition(path.geometry.dimension());
  const std::size_t steps = options.steps;
  const double h = (lambda1 - lambda0) / static_cast<double>(steps);
  auto node = [&](std::size_t k) { return k == steps ? lambda1 : lambda0 + h * static_cast<double>(k); };
  auto midpoint = [&](std::size_t k) { return lambda0 + h * (static_cast<double>(k) + 0.5); };

  const std::size_t m = resolve_patch(point_spectrum(path, sectors, lambda0, false).energies,
                                      options.patch).m;
  out.steps = steps;
  out.m = m;

  // Midpoint eigensystems are kept for the second pass when they fit.
  std::size_t block_bytes = 0;
  for (std::size_t s = 0; s < sectors.size(); ++s)
    block_bytes += sectors.sector_dim(s) * sectors.sector_dim(s) * sizeof(Complex);
  const bool cache = block_bytes * steps < (std::size_t{1} << 30);
  std::vector<std::vector<EigenSystem>> mid_blocks(cache ? steps : 0);

  // Pass 1: patch gaps on every node and midpoint, in path order.
  std::vector<GapSample> samples(2 * steps + 1);
  parallel_for(samples.size(), [&](std::size_t i) {
    const bool is_mid = i % 2 == 1;
    const double lambda = is_mid ? midpoint(i / 2) : node(i / 2);
    PointSpectrum ps = point_spectrum(path, sectors, lambda, is_mid && cache);
    samples[i] = patch_gap_at(lambda, ps.energies, m);
    if (is_mid && cache) mid_blocks[i / 2] = std::move(ps.blocks);
  }, memory_bounded_workers(4 * static_cast<std::size_t>(dim * dim) * sizeof(Complex)));

  out.min_patch_gap = std::numeric_limits<double>::infinity();
  for (const auto& s : samples)
    if (s.gap < out.min_patch_gap) {
      out.min_patch_gap = s.gap;
      out.lambda_at_min = s.lambda;
    }
  out.gamma = options.gamma.value_or(options.gamma_fraction * out.min_patch_gap);
  if (options.enforce_gap) {
    for (const auto& s : samples)
      if (!s.isolated || s.gap < out.gamma || !(out.gamma > 0.0)) gap_closed(s, out.gamma);
  } else if (!(out.gamma > 0.0)) {
    throw GapClosedError("flow: no positive gamma available", out.lambda_at_min,
                         out.min_patch_gap, out.gamma);
  }
  const FilterFunction filter(out.gamma);

  // Pass 2: sequential midpoint exponential steps, block by block.
  std::vector<ComplexMatrix> v(sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto n = static_cast<Eigen::Index>(sectors.sector_dim(s));
    v[s] = ComplexMatrix::Identity(n, n);
  }
  for (std::size_t k = 0; k < steps; ++k) {
    const double lambda = midpoint(k);
    const ComplexMatrix hprime = assemble_derivative(path, lambda);
    std::vector<EigenSystem> blocks;
    if (cache) {
      blocks = std::move(mid_blocks[k]);
    } else {
      blocks = point_spectrum(path, sectors, lambda, true).blocks;
    }
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      const ComplexMatrix d = generator_block(blocks[s], sectors.project(hprime, s), filter);
      v[s] = unitary_exp(d, h) * v[s];
    }
  }
  out.v = ComplexMatrix::Zero(dim, dim);
  for (std::size_t s = 0; s < sectors.size(); ++s) sectors.add_block(out.v, v[s], s);
  return out;
}

double transport_check(const FlowUnitary& v, const GroundData& p0, const GroundData& p1) {
  if (v.v.rows() != p0.projector.rows() || v.v.rows() != p1.projector.rows())
    throw ValidationError("transport check: dimension mismatch");
  return spectral_norm(v.v * p0.projector * v.v.adjoint() - p1.projector);
}

double unitarity_residual(const FlowUnitary& v) { return unitarity_error(v.v); }

ComplexMatrix apply_automorphism(const FlowUnitary& v, const ComplexMatrix& a) {
  if (a.rows() != v.v.rows() || a.cols() != v.v.cols())
    throw ValidationError("automorphism: dimension mismatch");
  return v.v.adjoint() * a * v.v;
}

double derivative_identity_check(const Model& model, double lambda, double gamma, double h,
                                 const PatchPolicy& patch, bool use_sectors) {
  if (!(h > 0.0)) throw ValidationError("derivative identity: step must be positive");
  const GroundData center = model_ground_data(model, lambda, patch);
  const auto fixed = PatchPolicy::explicit_size(center.m);
  const GroundData plus = model_ground_data(model, lambda + h, fixed);
  const GroundData minus = model_ground_data(model, lambda - h, fixed);
  for (const GroundData* g : {&minus, &center, &plus})
    if (g->patch_gap < gamma) {
      std::ostringstream os;
      os << "derivative identity: patch gap " << g->patch_gap << " below gamma " << gamma;
      throw PatchNotIsolatedError(os.str(), {g->e0, g->e0 + g->split, g->e0 + g->split + g->patch_gap});
    }
  const ComplexMatrix d = flow_generator(model, lambda, FilterFunction(gamma), use_sectors).d;
  const ComplexMatrix& p = center.projector;
  const ComplexMatrix lhs = (plus.projector - minus.projector) / (2.0 * h);
  return spectral_norm(lhs - kI * commutator(d, p));
}

double symmetry_commutation(const ComplexMatrix& m, const SymmetryAction& pi,
                            const LatticeGeometry& geometry) {
  const ComplexMatrix u = pi.global(geometry);
  if (u.rows() != m.rows() || u.cols() != m.cols())
    throw ValidationError("symmetry commutation: dimension mismatch");
  return spectral_norm(commutator(u, m));
}

}  // namespace spinlab
