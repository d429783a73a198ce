#include "spinlab/dynamics/lieb_robinson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "spinlab/core/error.hpp"
#include "spinlab/core/parallel.hpp"
#include "spinlab/dynamics/heisenberg.hpp"
#include "spinlab/simd/kernels.hpp"
#include "spinlab/spectral/ground.hpp"

namespace spinlab {

LocalOperator translated_copy(const LocalOperator& a, const LocalOperator& b_template, int d,
                              const LatticeGeometry& geometry) {
  if (a.support.empty() || b_template.support.empty())
    throw ValidationError("lr scan: empty support");
  const int shift = *std::ranges::max_element(a.support) + d -
                    *std::ranges::min_element(b_template.support);
  LocalOperator b{{}, b_template.matrix};
  for (int s : b_template.support) {
    const int moved = s + shift;
    if (!geometry.contains(moved)) {
      std::ostringstream os;
      os << "lr scan: distance " << d << " places b on site " << moved << " outside the lattice";
      throw ValidationError(os.str());
    }
    if (std::ranges::find(a.support, moved) != a.support.end()) {
      std::ostringstream os;
      os << "lr scan: distance " << d << " makes the supports overlap at site " << moved;
      throw ValidationError(os.str());
    }
    b.support.push_back(moved);
  }
  return b;
}

namespace {

// Diagonal of the embedded a when it is a real diagonal operator taking
// exactly two values; empty otherwise.
std::vector<double> two_valued_diagonal(const LocalOperator& a, const LatticeGeometry& g) {
  const LocalOperator op = canonicalize(a, g);
  const auto& m = op.matrix;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if ((i != j && m(i, j) != Complex(0.0)) || (i == j && m(i, i).imag() != 0.0)) return {};
  std::set<double> values;
  for (Eigen::Index i = 0; i < m.rows(); ++i) values.insert(m(i, i).real());
  if (values.size() != 2) return {};

  std::vector<double> diag(g.dimension());
  for (std::size_t idx = 0; idx < diag.size(); ++idx) {
    std::size_t local = 0;
    for (int s : op.support) {
      const auto dim = static_cast<std::size_t>(g.local_dim(s));
      local = local * dim + (idx / g.stride(s)) % dim;
    }
    diag[idx] = m(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(local)).real();
  }
  return diag;
}

struct SectorBasis {
  RealMatrix q;
  RealVector energies;
  std::vector<Eigen::Index> plus, minus;  // rows where a takes its larger / smaller value
};

double block_norm(const SectorBasis& sb, const RealMatrix& bt, double t) {
  if (sb.plus.empty() || sb.minus.empty()) return 0.0;
  const auto n = bt.rows();
  ComplexMatrix c = bt.cast<Complex>();
  std::vector<Complex> phase(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) phase[static_cast<std::size_t>(j)] = std::polar(1.0, sb.energies(j) * t);
  simd::kernels().phase_sandwich(c.data(), c.data(), phase.data(), phase.data(),
                                 static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  const RealMatrix qr = sb.q(sb.plus, Eigen::all);
  const RealMatrix qc = sb.q(sb.minus, Eigen::all);
  const RealMatrix re = qr * c.real() * qc.transpose();
  const RealMatrix im = qr * c.imag() * qc.transpose();
  ComplexMatrix block(re.rows(), re.cols());
  block.real() = re;
  block.imag() = im;
  return spectral_norm(block);
}

// t = 0 in the computational basis: ||Pi_plus b Pi_minus||, exactly zero for
// disjoint supports.
double block_norm_at_zero(const SectorBasis& sb, const RealMatrix& b_block) {
  if (sb.plus.empty() || sb.minus.empty()) return 0.0;
  const RealMatrix off = b_block(sb.plus, sb.minus);
  if (off.isZero(0.0)) return 0.0;
  return spectral_norm(ComplexMatrix(off.cast<Complex>()));
}

// Sector evaluation: H real and symmetric under the model's diagonal labels,
// a diagonal and two-valued, b real Hermitian commuting with the labels.
// Then [A, X] is block off-diagonal between the two eigenspaces of A, so
// ||[A, X]|| = |alpha - beta| ||Pi_alpha X Pi_beta|| for Hermitian X, and the
// norm is the maximum over symmetry sectors.
std::optional<LRScan> sector_scan(const Model& model, double lambda, const LocalOperator& a,
                                  const std::vector<LocalOperator>& bs,
                                  const std::vector<double>& times) {
  const auto& g = model.geometry;
  const auto diag = two_valued_diagonal(a, g);
  if (diag.empty()) return std::nullopt;
  for (const auto& b : bs)
    if (!is_real(b.matrix) || hermiticity_error(b.matrix) != 0.0) return std::nullopt;
  ComplexMatrix h = assemble_hamiltonian(model, lambda);
  if (!is_real(h)) return std::nullopt;

  std::vector<BasisSymmetry> labels;
  for (const auto& s : model.symmetries)
    if (s.is_diagonal()) labels.push_back(s);
  const SectorDecomposition sectors = labels.empty() ? SectorDecomposition(g.dimension())
                                                     : SectorDecomposition(g.dimension(), labels);
  sectors.require_commutes(h, 1e-12, model.name.c_str());
  for (const auto& b : bs)
    if (sectors.commutation_defect(embed(b, g)) != 0.0) return std::nullopt;

  const double alpha = *std::ranges::max_element(diag);
  const double beta = *std::ranges::min_element(diag);
  std::vector<SectorBasis> basis(sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const RealMatrix block = sectors.project(h, s).real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(block);
    if (solver.info() != Eigen::Success) throw NumericalError("lr scan: eigensolver failed");
    basis[s].q = solver.eigenvectors();
    basis[s].energies = solver.eigenvalues();
    const auto states = sectors.states(s);
    for (std::size_t i = 0; i < states.size(); ++i)
      (diag[states[i]] == alpha ? basis[s].plus : basis[s].minus).push_back(static_cast<Eigen::Index>(i));
  }
  h.resize(0, 0);

  LRScan out;
  out.sector_path = true;
  out.samples.resize(bs.size() * times.size());
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const ComplexMatrix big = embed(bs[k], g);
    std::vector<RealMatrix> bt(sectors.size());
    std::vector<double> at_zero(sectors.size(), 0.0);
    const bool need_zero = std::ranges::find(times, 0.0) != times.end();
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      const RealMatrix bs_block = sectors.project(big, s).real();
      bt[s] = basis[s].q.transpose() * bs_block * basis[s].q;
      if (need_zero) at_zero[s] = block_norm_at_zero(basis[s], bs_block);
    }
    const int d = g.distance(a.support, bs[k].support);
    parallel_for(times.size(), [&](std::size_t ti) {
      const double t = times[ti];
      double c = 0.0;
      for (std::size_t s = 0; s < sectors.size(); ++s)
        c = std::max(c, (alpha - beta) * (t == 0.0 ? at_zero[s] : block_norm(basis[s], bt[s], t)));
      out.samples[k * times.size() + ti] = LRSample{d, t, c};
    }, memory_bounded_workers(8 * big.size() * sizeof(double)));
  }
  return out;
}

}  // namespace

LRScan lr_commutator_scan(const Model& model, double lambda, const LocalOperator& a,
                          const LocalOperator& b_template, const std::vector<int>& distances,
                          const std::vector<double>& times, const LRScanOptions& options) {
  const auto& g = model.geometry;
  g.require_subset(a.support, "lr scan operator a");
  if (distances.empty() || times.empty()) throw ValidationError("lr scan: empty grid");
  std::vector<LocalOperator> bs;
  for (int d : distances) {
    bs.push_back(translated_copy(a, b_template, d, g));
    g.require_subset(bs.back().support, "lr scan operator b");
  }
  const double bound = 2.0 * spectral_norm(a.matrix) * spectral_norm(b_template.matrix);

  std::optional<LRScan> fast;
  if (options.allow_sector_path) fast = sector_scan(model, lambda, a, bs, times);
  if (fast) {
    fast->norm_bound = bound;
    return *std::move(fast);
  }

  const ModelSpectrum ms = [&] {
    const ComplexMatrix h = assemble_hamiltonian(model, lambda);
    SectorDecomposition sectors = model_sectors(model);
    sectors.require_commutes(h, 1e-12, model.name.c_str());
    auto spectrum = sector_spectrum(h, sectors, true);
    return ModelSpectrum{std::move(sectors), std::move(spectrum), 0.0};
  }();
  const EigenSystem eig = lowest_states(ms.spectrum, ms.sectors, ms.sectors.dim());
  const ComplexMatrix big_a = embed(a, g);

  LRScan out;
  out.norm_bound = bound;
  out.samples.resize(bs.size() * times.size());
  const std::size_t dim = g.dimension();
  parallel_for(out.samples.size(), [&](std::size_t idx) {
    const auto& b = bs[idx / times.size()];
    const double t = times[idx % times.size()];
    const ComplexMatrix x = heisenberg_evolve(eig, embed(b, g), t);
    out.samples[idx] = LRSample{g.distance(a.support, b.support), t,
                                spectral_norm(commutator(big_a, x))};
  }, memory_bounded_workers(6 * dim * dim * sizeof(Complex)));
  return out;
}

LRFit lr_fit(const std::vector<LRSample>& samples, double norm_bound,
             std::optional<double> epsilon) {
  if (!(norm_bound > 0.0)) throw ValidationError("lr fit: norm bound must be positive");
  const double eps = epsilon.value_or(1e-3 * norm_bound);
  if (!(eps > 0.0)) throw ValidationError("lr fit: threshold must be positive");

  std::vector<const LRSample*> used;
  std::set<int> ds;
  std::set<double> ts;
  for (const auto& s : samples)
    if (s.c > 1e-12 && s.c < norm_bound && s.c < eps) {
      used.push_back(&s);
      ds.insert(s.d);
      ts.insert(std::abs(s.t));
    }
  if (ds.size() < 3 || ts.size() < 3)
    throw NumericalError("lr fit: insufficient usable samples (need 3 distances and 3 times "
                         "with 1e-12 < c < epsilon)");

  // ln c = b0 + b1 d + b2 |t|
  RealMatrix x(static_cast<Eigen::Index>(used.size()), 3);
  RealVector y(static_cast<Eigen::Index>(used.size()));
  for (std::size_t i = 0; i < used.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = 1.0;
    x(r, 1) = used[i]->d;
    x(r, 2) = std::abs(used[i]->t);
    y(r) = std::log(used[i]->c);
  }
  const RealVector beta = x.colPivHouseholderQr().solve(y);
  LRFit fit;
  fit.epsilon = eps;
  fit.used = used.size();
  fit.mu = -beta(1);
  fit.c0 = std::exp(beta(0));
  fit.v = fit.mu != 0.0 ? beta(2) / fit.mu : std::numeric_limits<double>::quiet_NaN();
  fit.residual = std::sqrt((x * beta - y).squaredNorm() / static_cast<double>(used.size()));
  fit.resolved = fit.mu > 0.0;

  // Arrival fronts: for each |t|, the largest d with c >= eps, refined by
  // log-linear interpolation towards the next sampled distance.
  std::map<double, std::map<int, double>> by_time;
  for (const auto& s : samples) by_time[std::abs(s.t)][s.d] = s.c;
  std::vector<std::pair<double, double>> fronts;
  for (const auto& [t, row] : by_time) {
    std::optional<std::pair<int, double>> last_above;
    for (const auto& [d, c] : row)
      if (c >= eps) last_above = std::pair{d, c};
    if (!last_above) continue;
    auto next = row.upper_bound(last_above->first);
    if (next == row.end() || !(next->second > 0.0)) continue;
    const double l0 = std::log(last_above->second);
    const double l1 = std::log(next->second);
    const double frac = (l0 - std::log(eps)) / (l0 - l1);
    fronts.emplace_back(t, last_above->first + frac * (next->first - last_above->first));
  }
  if (fronts.size() >= 2) {
    double mt = 0.0, md = 0.0;
    for (auto [t, d] : fronts) {
      mt += t;
      md += d;
    }
    mt /= static_cast<double>(fronts.size());
    md /= static_cast<double>(fronts.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [t, d] : fronts) {
      sxy += (t - mt) * (d - md);
      sxx += (t - mt) * (t - mt);
    }
    fit.v_arrival = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  } else {
    fit.v_arrival = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

}  // namespace spinlab
