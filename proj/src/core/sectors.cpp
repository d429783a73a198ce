#include "spinlab/core/sectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "spinlab/core/error.hpp"

namespace spinlab {

BasisSymmetry BasisSymmetry::diagonal(std::string name, std::vector<int> labels) {
  BasisSymmetry s;
  s.name = std::move(name);
  s.label = std::move(labels);
  return s;
}

BasisSymmetry BasisSymmetry::involution(std::string name, std::vector<std::size_t> image,
                                        std::vector<double> sign) {
  BasisSymmetry s;
  s.name = std::move(name);
  if (sign.empty()) sign.assign(image.size(), 1.0);
  if (sign.size() != image.size())
    throw ValidationError("symmetry " + s.name + ": sign/image size mismatch");
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] >= image.size() || image[image[i]] != i)
      throw ValidationError("symmetry " + s.name + ": image is not an involution");
    if (sign[i] != 1.0 && sign[i] != -1.0)
      throw ValidationError("symmetry " + s.name + ": signs must be +1 or -1");
    if (sign[i] * sign[image[i]] != 1.0)
      throw ValidationError("symmetry " + s.name + ": does not square to the identity");
  }
  s.image = std::move(image);
  s.sign = std::move(sign);
  return s;
}

SectorDecomposition::SectorDecomposition(std::size_t dim) : dim_(dim) {
  Sector all;
  all.label = "all";
  for (std::size_t i = 0; i < dim; ++i) {
    all.index.push_back(i);
    all.coef.push_back(1.0);
    all.offsets.push_back(i + 1);
  }
  sectors_.push_back(std::move(all));
}

SectorDecomposition::SectorDecomposition(std::size_t dim,
                                         std::vector<BasisSymmetry> symmetries)
    : dim_(dim), symmetries_(std::move(symmetries)) {
  std::vector<const BasisSymmetry*> diag, invol;
  for (const auto& s : symmetries_) {
    const std::size_t n = s.is_diagonal() ? s.label.size() : s.image.size();
    if (n != dim) throw ValidationError("symmetry " + s.name + ": wrong dimension");
    (s.is_diagonal() ? diag : invol).push_back(&s);
  }
  for (const auto* s : invol) {
    for (const auto* d : diag)
      for (std::size_t i = 0; i < dim; ++i)
        if (d->label[s->image[i]] != d->label[i])
          throw ValidationError("symmetry " + s->name + " does not preserve " + d->name);
    for (const auto* t : invol)
      for (std::size_t i = 0; i < dim; ++i) {
        if (s->image[t->image[i]] != t->image[s->image[i]] ||
            t->sign[i] * s->sign[t->image[i]] != s->sign[i] * t->sign[s->image[i]])
          throw ValidationError("symmetries " + s->name + " and " + t->name +
                                " do not commute");
      }
  }
  partition_ = invol.empty();

  const std::size_t k = invol.size();
  const std::size_t n_elements = std::size_t{1} << k;
  // Apply group element `mask` to state i; returns (image, accumulated sign).
  auto act = [&](std::size_t mask, std::size_t i) {
    double sg = 1.0;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (std::size_t{1} << b)) {
        sg *= invol[b]->sign[i];
        i = invol[b]->image[i];
      }
    return std::pair{i, sg};
  };

  // Key: diagonal labels followed by the character bits.
  std::map<std::vector<int>, Sector> by_key;
  std::vector<bool> visited(dim, false);
  std::map<std::size_t, double> accum;
  for (std::size_t i = 0; i < dim; ++i) {
    if (visited[i]) continue;
    std::vector<int> base;
    for (const auto* d : diag) base.push_back(d->label[i]);
    for (std::size_t g = 0; g < n_elements; ++g) visited[act(g, i).first] = true;
    for (std::size_t chi = 0; chi < n_elements; ++chi) {
      accum.clear();
      for (std::size_t g = 0; g < n_elements; ++g) {
        const auto [j, sg] = act(g, i);
        const double character = (std::popcount(g & chi) % 2) ? -1.0 : 1.0;
        accum[j] += character * sg;
      }
      double norm2 = 0.0;
      for (auto& [j, c] : accum) norm2 += c * c;
      if (norm2 < 0.5) continue;
      const double inv = 1.0 / std::sqrt(norm2);
      std::vector<int> key = base;
      for (std::size_t b = 0; b < k; ++b) key.push_back((chi >> b) & 1);
      Sector& sec = by_key[key];
      for (auto& [j, c] : accum)
        if (c != 0.0) {
          sec.index.push_back(j);
          sec.coef.push_back(c * inv);
        }
      sec.offsets.push_back(sec.index.size());
    }
  }
  std::size_t total = 0;
  for (auto& [key, sec] : by_key) {
    std::string label;
    for (std::size_t d = 0; d < diag.size(); ++d)
      label += (label.empty() ? "" : ",") + diag[d]->name + "=" + std::to_string(key[d]);
    for (std::size_t b = 0; b < k; ++b)
      label += (label.empty() ? "" : ",") + invol[b]->name + "=" +
               (key[diag.size() + b] ? "-1" : "+1");
    sec.label = label.empty() ? "all" : label;
    total += sec.offsets.size() - 1;
    sectors_.push_back(std::move(sec));
  }
  if (total != dim)
    throw NumericalError("sector decomposition lost states (" + std::to_string(total) +
                         " of " + std::to_string(dim) + ")");
}

std::vector<std::size_t> SectorDecomposition::states(std::size_t s) const {
  if (!partition_) throw ValidationError("sector states requested for a non-partition basis");
  return sectors_[s].index;
}

ComplexMatrix SectorDecomposition::project(const ComplexMatrix& m, std::size_t s) const {
  const Sector& sec = sectors_[s];
  const auto n = static_cast<Eigen::Index>(sector_dim(s));
  ComplexMatrix out(n, n);
  if (partition_) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto col = static_cast<Eigen::Index>(sec.index[static_cast<std::size_t>(b)]);
      for (Eigen::Index a = 0; a < n; ++a)
        out(a, b) = m(static_cast<Eigen::Index>(sec.index[static_cast<std::size_t>(a)]), col);
    }
    return out;
  }
  for (Eigen::Index b = 0; b < n; ++b) {
    const std::size_t b0 = sec.offsets[static_cast<std::size_t>(b)];
    const std::size_t b1 = sec.offsets[static_cast<std::size_t>(b) + 1];
    for (Eigen::Index a = 0; a < n; ++a) {
      const std::size_t a0 = sec.offsets[static_cast<std::size_t>(a)];
      const std::size_t a1 = sec.offsets[static_cast<std::size_t>(a) + 1];
      Complex acc = 0.0;
      for (std::size_t q = b0; q < b1; ++q) {
        const auto col = static_cast<Eigen::Index>(sec.index[q]);
        for (std::size_t p = a0; p < a1; ++p)
          acc += sec.coef[p] * sec.coef[q] * m(static_cast<Eigen::Index>(sec.index[p]), col);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix SectorDecomposition::lift(const ComplexMatrix& c, std::size_t s) const {
  const Sector& sec = sectors_[s];
  if (static_cast<std::size_t>(c.rows()) != sector_dim(s))
    throw ValidationError("lift: coefficient rows do not match the sector");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_), c.cols());
  for (std::size_t a = 0; a + 1 < sec.offsets.size(); ++a)
    for (std::size_t p = sec.offsets[a]; p < sec.offsets[a + 1]; ++p)
      out.row(static_cast<Eigen::Index>(sec.index[p])) +=
          sec.coef[p] * c.row(static_cast<Eigen::Index>(a));
  return out;
}

void SectorDecomposition::add_block(ComplexMatrix& target, const ComplexMatrix& block,
                                    std::size_t s) const {
  const ComplexMatrix half = lift(block, s);  // dim x n
  const Sector& sec = sectors_[s];
  for (std::size_t b = 0; b + 1 < sec.offsets.size(); ++b)
    for (std::size_t q = sec.offsets[b]; q < sec.offsets[b + 1]; ++q)
      target.col(static_cast<Eigen::Index>(sec.index[q])) +=
          sec.coef[q] * half.col(static_cast<Eigen::Index>(b));
}

double SectorDecomposition::commutation_defect(const ComplexMatrix& m) const {
  double worst = 0.0;
  const auto n = static_cast<Eigen::Index>(dim_);
  for (const auto& s : symmetries_) {
    if (s.is_diagonal()) {
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
          if (s.label[static_cast<std::size_t>(i)] != s.label[static_cast<std::size_t>(j)])
            worst = std::max(worst, std::abs(m(i, j)));
    } else {
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        const auto gj = static_cast<Eigen::Index>(s.image[uj]);
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          const auto gi = static_cast<Eigen::Index>(s.image[ui]);
          worst = std::max(worst, std::abs(m(gi, gj) - s.sign[ui] * s.sign[uj] * m(i, j)));
        }
      }
    }
  }
  return worst;
}

void SectorDecomposition::require_commutes(const ComplexMatrix& m, double tol,
                                           const char* what) const {
  if (symmetries_.empty()) return;
  const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  const double defect = commutation_defect(m);
  if (defect > tol * std::max(scale, 1e-300) && defect > 0.0)
    throw ValidationError(std::string(what) +
                          ": operator does not commute with the declared symmetries");
}

SectorSpectrum sector_spectrum(const ComplexMatrix& h, const SectorDecomposition& sectors,
                               bool with_vectors) {
  if (static_cast<std::size_t>(h.rows()) != sectors.dim())
    throw ValidationError("sector_spectrum: dimension mismatch");
  SectorSpectrum out;
  out.blocks.resize(sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const ComplexMatrix block = sectors.project(h, s);
    if (with_vectors) {
      out.blocks[s] = hermitian_eigensystem(block);
    } else {
      out.blocks[s].energies = hermitian_eigenvalues(block);
    }
  }
  for (std::size_t s = 0; s < sectors.size(); ++s)
    for (std::size_t k = 0; k < out.blocks[s].size(); ++k) out.origin.emplace_back(s, k);
  std::stable_sort(out.origin.begin(), out.origin.end(), [&](auto a, auto b) {
    return out.blocks[a.first].energies(static_cast<Eigen::Index>(a.second)) <
           out.blocks[b.first].energies(static_cast<Eigen::Index>(b.second));
  });
  out.energies.resize(static_cast<Eigen::Index>(out.origin.size()));
  for (std::size_t k = 0; k < out.origin.size(); ++k)
    out.energies(static_cast<Eigen::Index>(k)) =
        out.blocks[out.origin[k].first].energies(static_cast<Eigen::Index>(out.origin[k].second));
  return out;
}

EigenSystem lowest_states(const SectorSpectrum& spectrum, const SectorDecomposition& sectors,
                          std::size_t count) {
  count = std::min(count, spectrum.origin.size());
  EigenSystem out;
  out.energies = spectrum.energies.head(static_cast<Eigen::Index>(count));
  out.vectors.resize(static_cast<Eigen::Index>(sectors.dim()), static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    const auto [s, idx] = spectrum.origin[k];
    const EigenSystem& block = spectrum.blocks[s];
    if (block.vectors.size() == 0)
      throw ValidationError("lowest_states: spectrum was computed without vectors");
    out.vectors.col(static_cast<Eigen::Index>(k)) =
        sectors.lift(block.vectors.col(static_cast<Eigen::Index>(idx)), s);
  }
  return out;
}

}  // namespace spinlab
