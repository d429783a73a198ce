#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spinlab {

// Dense bit-packed GF(2) matrix, rows stored as 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (row(r)[c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    auto& w = row(r)[c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::span<std::uint64_t> row(std::size_t r) { return {data_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return {data_.data() + r * words_, words_};
  }
  // row(dst) ^= row(src)
  void add_row(std::size_t dst, std::size_t src);
  void append_row(std::span<const std::uint64_t> bits);

  // Submatrix with the given columns, in the given order.
  BitMatrix columns(std::span<const std::size_t> cols) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

// Rank over GF(2) by Gaussian elimination.
std::size_t gf2_rank(BitMatrix m);

// Row-reduced basis of the row space (rank rows).
BitMatrix gf2_row_basis(BitMatrix m);

// Basis of {v : m v = 0} as rows.
BitMatrix gf2_nullspace(const BitMatrix& m);

}  // namespace spinlab
