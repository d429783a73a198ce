#include "spinlab/flow/locality.hpp"

#include <cmath>
#include <limits>

#include "spinlab/core/error.hpp"
#include "spinlab/core/parallel.hpp"

namespace spinlab {

namespace {

void require_global(const ComplexMatrix& a, const LatticeGeometry& g, const char* what) {
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  if (a.rows() != dim || a.cols() != dim)
    throw ValidationError(std::string(what) + ": operator must act on the whole lattice");
}

}  // namespace

LocalityProfile locality_profile(const ComplexMatrix& alpha_a, int center,
                                 const LatticeGeometry& geometry) {
  require_global(alpha_a, geometry, "locality profile");
  LocalityProfile p;
  p.center = center;
  const int r_max = geometry.eccentricity(center);
  for (int r = 0; r <= r_max; ++r) p.radii.push_back(r);
  p.deltas.resize(p.radii.size());
  const std::size_t dim = geometry.dimension();
  parallel_for(p.radii.size(), [&](std::size_t i) {
    const auto ball = geometry.ball(center, p.radii[i]);
    p.deltas[i] = spectral_norm(alpha_a - conditional_expectation(alpha_a, ball, geometry));
  }, memory_bounded_workers(4 * dim * dim * sizeof(Complex)));

  std::vector<std::pair<double, double>> tail;
  for (std::size_t i = 1; i + 1 < p.radii.size(); ++i)
    if (p.deltas[i] > 1e-13) tail.emplace_back(p.radii[i], std::log(p.deltas[i]));
  if (tail.size() < 2) {
    p.decay_rate = std::numeric_limits<double>::quiet_NaN();
    return p;
  }
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : tail) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(tail.size());
  my /= static_cast<double>(tail.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : tail) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  p.decay_rate = -sxy / sxx;
  return p;
}

InteractionDecomposition decompose_generator(const ComplexMatrix& d, int center,
                                             const LatticeGeometry& geometry) {
  require_global(d, geometry, "decomposition");
  InteractionDecomposition out;
  out.center = center;
  const int r_max = geometry.eccentricity(center);
  ComplexMatrix previous;
  ComplexMatrix sum = ComplexMatrix::Zero(d.rows(), d.cols());
  for (int r = 0; r <= r_max; ++r) {
    ComplexMatrix current = conditional_expectation(d, geometry.ball(center, r), geometry);
    ComplexMatrix term = r == 0 ? current : (current - previous).eval();
    sum += term;
    out.radii.push_back(r);
    out.norms.push_back(spectral_norm(term));
    out.terms.push_back(std::move(term));
    previous = std::move(current);
  }
  out.reconstruction_error = spectral_norm(sum - d);
  return out;
}

}  // namespace spinlab
