#include "spinlab/stabilizer/gf2.hpp"

#include <algorithm>

#include "spinlab/core/error.hpp"

namespace spinlab {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

void BitMatrix::add_row(std::size_t dst, std::size_t src) {
  auto d = row(dst);
  const auto s = row(src);
  for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BitMatrix::append_row(std::span<const std::uint64_t> bits) {
  if (bits.size() != words_) throw ValidationError("bit matrix: row width mismatch");
  data_.insert(data_.end(), bits.begin(), bits.end());
  ++rows_;
}

BitMatrix BitMatrix::columns(std::span<const std::size_t> cols) const {
  BitMatrix out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (get(r, cols[k])) out.set(r, k, true);
  return out;
}

namespace {

void swap_rows(BitMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = m.row(a);
  auto rb = m.row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(BitMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.add_row(i, r);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t gf2_rank(BitMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (m.get(i, c)) m.add_row(i, r);
    ++r;
  }
  return r;
}

BitMatrix gf2_row_basis(BitMatrix m) {
  const auto pivots = rref(m);
  BitMatrix out(0, m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) out.append_row(m.row(i));
  return out;
}

BitMatrix gf2_nullspace(const BitMatrix& m) {
  BitMatrix reduced = m;
  const auto pivots = rref(reduced);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  BitMatrix out(0, m.cols());
  BitMatrix v(1, m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::ranges::fill(v.row(0), 0);
    v.set(0, f, true);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (reduced.get(i, f)) v.set(0, pivots[i], true);
    out.append_row(v.row(0));
  }
  return out;
}

}  // namespace spinlab
