#include "spinlab/spectral/ground.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinlab/core/error.hpp"

namespace spinlab {

namespace {

[[noreturn]] void not_isolated(const RealVector& energies, std::size_t m, const std::string& why) {
  const auto count = std::min<Eigen::Index>(energies.size(), static_cast<Eigen::Index>(m) + 4);
  std::vector<double> head(energies.data(), energies.data() + count);
  std::ostringstream os;
  os.precision(17);
  os << "patch not isolated: " << why << "; spectrum head:";
  for (double e : head) os << ' ' << e;
  throw PatchNotIsolatedError(os.str(), std::move(head));
}

}  // namespace

PatchInfo resolve_patch(const RealVector& energies, const PatchPolicy& policy) {
  const auto n = static_cast<std::size_t>(energies.size());
  if (n == 0) throw ValidationError("ground data: empty spectrum");
  for (std::size_t k = 1; k < n; ++k)
    if (energies(static_cast<Eigen::Index>(k)) < energies(static_cast<Eigen::Index>(k - 1)))
      throw ValidationError("ground data: energies must be ascending");

  const double e0 = energies(0);
  std::size_t m = 0;
  if (policy.m) {
    m = *policy.m;
    if (m == 0) throw ValidationError("ground data: patch size must be positive");
    if (m >= n) not_isolated(energies, m, "explicit patch covers the whole spectrum");
  } else {
    const double scale = std::max(std::abs(energies(0)), std::abs(energies(energies.size() - 1)));
    const double delta = policy.delta.value_or(1e-8 * scale);
    if (!(delta >= 0.0)) throw ValidationError("ground data: cluster tolerance must be >= 0");
    while (m < n && energies(static_cast<Eigen::Index>(m)) - e0 <= delta) ++m;
    if (m == n) not_isolated(energies, m, "every level lies within the cluster tolerance");
  }

  PatchInfo info;
  info.e0 = e0;
  info.m = m;
  info.split = energies(static_cast<Eigen::Index>(m) - 1) - e0;
  info.patch_gap = energies(static_cast<Eigen::Index>(m)) - energies(static_cast<Eigen::Index>(m) - 1);
  info.gap = energies(1) - e0;
  if (!(info.patch_gap > info.split)) {
    std::ostringstream os;
    os << "patch gap " << info.patch_gap << " does not exceed the splitting " << info.split;
    not_isolated(energies, m, os.str());
  }
  return info;
}

namespace {

GroundData finish(const PatchInfo& info, ComplexMatrix vectors) {
  GroundData g;
  static_cast<PatchInfo&>(g) = info;
  g.projector = vectors * vectors.adjoint();
  g.vectors = std::move(vectors);
  return g;
}

}  // namespace

GroundData ground_data(const EigenSystem& eig, const PatchPolicy& policy) {
  const PatchInfo info = resolve_patch(eig.energies, policy);
  if (eig.vectors.cols() < static_cast<Eigen::Index>(info.m))
    throw ValidationError("ground data: eigensystem lacks the patch vectors");
  return finish(info, eig.vectors.leftCols(static_cast<Eigen::Index>(info.m)));
}

ModelSpectrum model_spectrum(const Model& model, double lambda, bool with_vectors) {
  const ComplexMatrix h = assemble_hamiltonian(model, lambda);
  SectorDecomposition sectors = model_sectors(model);
  sectors.require_commutes(h, 1e-12, model.name.c_str());
  SectorSpectrum spectrum = sector_spectrum(h, sectors, with_vectors);
  const auto& e = spectrum.energies;
  const double h_norm = std::max(std::abs(e(0)), std::abs(e(e.size() - 1)));
  return ModelSpectrum{std::move(sectors), std::move(spectrum), h_norm};
}

GroundData ground_data(const ModelSpectrum& ms, const PatchPolicy& policy) {
  const PatchInfo info = resolve_patch(ms.spectrum.energies, policy);
  EigenSystem low = lowest_states(ms.spectrum, ms.sectors, info.m);
  return finish(info, std::move(low.vectors));
}

GroundData model_ground_data(const Model& model, double lambda, const PatchPolicy& policy) {
  return ground_data(model_spectrum(model, lambda, true), policy);
}

double local_order_test(const ComplexMatrix& projector, const LocalOperator& a,
                        const LatticeGeometry& geometry) {
  const ComplexMatrix big = embed(a, geometry);
  if (big.rows() != projector.rows())
    throw ValidationError("local_order_test: dimension mismatch");
  const ComplexMatrix pap = projector * big * projector;
  const Complex rank = projector.trace();
  if (std::abs(rank) < 0.5) throw ValidationError("local_order_test: empty projector");
  const Complex mean = pap.trace() / rank;
  return spectral_norm(pap - mean * projector);
}

}  // namespace spinlab
