#include "spinlab/core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spinlab/core/error.hpp"
#include "spinlab/simd/kernels.hpp"

namespace spinlab {

namespace {

// Global-index offsets of every configuration of `support` (legs in the given
// order, first leg most significant).
std::vector<std::size_t> support_offsets(std::span<const int> support,
                                         const LatticeGeometry& g) {
  std::vector<std::size_t> offsets{0};
  for (int site : support) {
    const auto d = static_cast<std::size_t>(g.local_dim(site));
    const std::size_t stride = g.stride(site);
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * d);
    for (std::size_t base : offsets)
      for (std::size_t a = 0; a < d; ++a) next.push_back(base + a * stride);
    offsets = std::move(next);
  }
  return offsets;
}

std::vector<int> complement(std::span<const int> region, const LatticeGeometry& g) {
  std::vector<int> out;
  for (int s : g.sites())
    if (std::find(region.begin(), region.end(), s) == region.end()) out.push_back(s);
  return out;
}

std::vector<int> sorted_copy(std::span<const int> v) {
  std::vector<int> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double EigenSystem::residual(const ComplexMatrix& h) const {
  const ComplexMatrix r = h * vectors - vectors * energies.asDiagonal();
  return r.colwise().norm().maxCoeff();
}

double EigenSystem::orthonormality_error() const {
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(n));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = static_cast<std::size_t>(a.rows() * b.rows());
  const std::size_t cols = static_cast<std::size_t>(a.cols() * b.cols());
  if (rows > kMaxDenseDim || cols > kMaxDenseDim)
    throw SizeError("kron: result exceeds the dense budget");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

LocalOperator canonicalize(const LocalOperator& op, const LatticeGeometry& g) {
  g.require_subset(op.support, "canonicalize");
  const std::size_t k = op.support.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return op.support[a] < op.support[b]; });
  LocalOperator out;
  for (auto i : order) out.support.push_back(op.support[i]);

  // Strides of each original leg inside the original and the sorted layout.
  std::vector<std::size_t> dims(k), old_stride(k), new_stride(k);
  for (std::size_t i = 0; i < k; ++i) dims[i] = g.local_dim(op.support[i]);
  std::size_t acc = 1;
  for (std::size_t i = k; i-- > 0;) {
    old_stride[i] = acc;
    acc *= dims[i];
  }
  if (static_cast<std::size_t>(op.matrix.rows()) != acc ||
      static_cast<std::size_t>(op.matrix.cols()) != acc)
    throw ValidationError("local operator: matrix dimension does not match support");
  acc = 1;
  for (std::size_t pos = k; pos-- > 0;) {
    new_stride[order[pos]] = acc;
    acc *= dims[order[pos]];
  }
  std::vector<std::size_t> perm(acc);
  for (std::size_t idx = 0; idx < acc; ++idx) {
    std::size_t rem = idx, mapped = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t digit = rem / old_stride[i];
      rem %= old_stride[i];
      mapped += digit * new_stride[i];
    }
    perm[idx] = mapped;
  }
  out.matrix = ComplexMatrix::Zero(op.matrix.rows(), op.matrix.cols());
  for (std::size_t r = 0; r < acc; ++r)
    for (std::size_t c = 0; c < acc; ++c)
      out.matrix(static_cast<Eigen::Index>(perm[r]), static_cast<Eigen::Index>(perm[c])) =
          op.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

void embed_add(ComplexMatrix& target, const LocalOperator& op,
               const LatticeGeometry& g, Complex scale) {
  g.require_subset(op.support, "embed");
  const std::size_t dim = g.dimension();
  if (static_cast<std::size_t>(target.rows()) != dim ||
      static_cast<std::size_t>(target.cols()) != dim)
    throw ValidationError("embed: target has the wrong dimension");
  const auto local = support_offsets(op.support, g);
  if (static_cast<std::size_t>(op.matrix.rows()) != local.size() ||
      static_cast<std::size_t>(op.matrix.cols()) != local.size())
    throw ValidationError("embed: matrix dimension does not match support");
  const auto rest = support_offsets(complement(op.support, g), g);

  std::vector<std::pair<std::size_t, std::size_t>> nz;
  std::vector<Complex> values;
  for (std::size_t a = 0; a < local.size(); ++a)
    for (std::size_t b = 0; b < local.size(); ++b) {
      const Complex v = op.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v != Complex(0.0)) {
        nz.emplace_back(local[a], local[b]);
        values.push_back(scale * v);
      }
    }
  for (std::size_t base : rest)
    for (std::size_t e = 0; e < nz.size(); ++e)
      target(static_cast<Eigen::Index>(base + nz[e].first),
             static_cast<Eigen::Index>(base + nz[e].second)) += values[e];
}

ComplexMatrix embed(const LocalOperator& op, const LatticeGeometry& g) {
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  embed_add(out, op, g);
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  return std::sqrt(simd::kernels().norm_sq(a.data(), static_cast<std::size_t>(a.size())));
}

double hermiticity_error(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("hermiticity: matrix is not square");
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double d = std::norm(a(i, j) - std::conj(a(j, i)));
      s += (i == j) ? d : 2.0 * d;
    }
  return std::sqrt(s);
}

bool is_real(const ComplexMatrix& a) {
  const Complex* p = a.data();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (p[i].imag() != 0.0) return false;
  return true;
}

void require_hermitian(const ComplexMatrix& h, const char* what) {
  if (h.rows() != h.cols())
    throw ValidationError(std::string(what) + ": matrix is not square");
  const double scale = frobenius_norm(h);
  const double err = hermiticity_error(h);
  if (err > 1e-10 * std::max(scale, 1e-300) && err > 0.0) {
    std::ostringstream msg;
    msg << what << ": matrix is not Hermitian (||h - h^dag||_F = " << err
        << ", ||h||_F = " << scale << ")";
    throw ValidationError(msg.str());
  }
}

namespace {

template <class Solver>
void check_solver(const Solver& solver, const ComplexMatrix& h) {
  if (solver.info() == Eigen::Success) return;
  std::ostringstream msg;
  msg << "eigensolver did not converge for a " << h.rows() << "x" << h.cols()
      << " matrix";
  throw NumericalError(msg.str());
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eigensystem");
  EigenSystem out;
  if (h.rows() == 0) return out;
  if (is_real(h)) {
    const RealMatrix re = h.real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(re);
    check_solver(solver, h);
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    check_solver(solver, h);
    out.energies = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& h) {
  require_hermitian(h, "hermitian_eigenvalues");
  if (h.rows() == 0) return RealVector();
  if (is_real(h)) {
    const RealMatrix re = h.real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(re, Eigen::EigenvaluesOnly);
    check_solver(solver, h);
    return solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  check_solver(solver, h);
  return solver.eigenvalues();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = frobenius_norm(a);
  if (scale == 0.0) return 0.0;
  if (a.rows() == a.cols()) {
    if (hermiticity_error(a) <= 1e-14 * scale) {
      const ComplexMatrix herm = 0.5 * (a + a.adjoint());
      return hermitian_eigenvalues(herm).cwiseAbs().maxCoeff();
    }
    const ComplexMatrix ia = kI * a;
    if (hermiticity_error(ia) <= 1e-14 * scale) {
      const ComplexMatrix herm = 0.5 * (ia + ia.adjoint());
      return hermitian_eigenvalues(herm).cwiseAbs().maxCoeff();
    }
  }
  ComplexMatrix gram = (a.cols() <= a.rows()) ? ComplexMatrix(a.adjoint() * a)
                                              : ComplexMatrix(a * a.adjoint());
  gram = 0.5 * (gram + gram.adjoint()).eval();
  return std::sqrt(std::max(0.0, hermitian_eigenvalues(gram).maxCoeff()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, std::span<const int> keep,
                            const LatticeGeometry& g) {
  g.require_subset(keep, "partial_trace");
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  if (a.rows() != dim || a.cols() != dim)
    throw ValidationError("partial_trace: operator does not act on the full lattice");
  const auto kept = sorted_copy(keep);
  const auto kept_off = support_offsets(kept, g);
  const auto traced_off = support_offsets(complement(kept, g), g);
  const auto nk = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  for (Eigen::Index j = 0; j < nk; ++j)
    for (Eigen::Index i = 0; i < nk; ++i) {
      Complex s = 0.0;
      for (std::size_t t : traced_off)
        s += a(static_cast<Eigen::Index>(kept_off[i] + t),
               static_cast<Eigen::Index>(kept_off[j] + t));
      out(i, j) = s;
    }
  return out;
}

ComplexMatrix conditional_expectation(const ComplexMatrix& a,
                                      std::span<const int> region,
                                      const LatticeGeometry& g) {
  g.require_subset(region, "conditional_expectation");
  if (region.size() == g.n_sites()) return a;
  const auto dim = static_cast<Eigen::Index>(g.dimension());
  if (region.empty()) {
    return (a.trace() / static_cast<double>(dim)) * ComplexMatrix::Identity(dim, dim);
  }
  const auto kept = sorted_copy(region);
  const double traced_dim =
      static_cast<double>(g.dimension()) / static_cast<double>(g.dimension_of(kept));
  LocalOperator reduced{kept, partial_trace(a, kept, g) / traced_dim};
  return embed(reduced, g);
}

ComplexMatrix unitary_exp(const EigenSystem& eig, double s) {
  ComplexVector phases(eig.energies.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::polar(1.0, s * eig.energies(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double s) {
  if (s == 0.0) {
    require_hermitian(h, "unitary_exp");
    return ComplexMatrix::Identity(h.rows(), h.cols());
  }
  return unitary_exp(hermitian_eigensystem(h), s);
}

double unitarity_error(const ComplexMatrix& u) {
  const ComplexMatrix gram = u.adjoint() * u;
  return spectral_norm(gram - ComplexMatrix::Identity(gram.rows(), gram.cols()));
}

}  // namespace spinlab
