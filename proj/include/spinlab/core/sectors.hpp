#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/core/linalg.hpp"
#include "spinlab/core/types.hpp"

namespace spinlab {

// A symmetry that maps computational basis states to basis states,
// |i> -> sign[i] |image[i]>, or a diagonal symmetry given by a conserved
// label per basis state (parity, total S^z, ...).
struct BasisSymmetry {
  std::string name;
  std::vector<int> label;
  std::vector<std::size_t> image;
  std::vector<double> sign;

  static BasisSymmetry diagonal(std::string name, std::vector<int> labels);
  // image must be an involution; sign entries are +1 or -1.
  static BasisSymmetry involution(std::string name, std::vector<std::size_t> image,
                                  std::vector<double> sign = {});
  bool is_diagonal() const { return !label.empty(); }
};

// Orthonormal symmetry-adapted basis of C^dim: one block per joint sector
// of the given commuting symmetries. Matrices commuting with all symmetries
// are block diagonal in it. Basis vectors are real and sparse (orbit size).
class SectorDecomposition {
 public:
  explicit SectorDecomposition(std::size_t dim);
  SectorDecomposition(std::size_t dim, std::vector<BasisSymmetry> symmetries);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return sectors_.size(); }
  const std::string& label(std::size_t s) const { return sectors_[s].label; }
  std::size_t sector_dim(std::size_t s) const { return sectors_[s].offsets.size() - 1; }
  // True when every basis vector is a single computational state.
  bool is_partition() const { return partition_; }
  // Computational states of sector s; requires is_partition().
  std::vector<std::size_t> states(std::size_t s) const;

  // B_s^dag m B_s
  ComplexMatrix project(const ComplexMatrix& m, std::size_t s) const;
  // B_s c, for c with sector_dim(s) rows.
  ComplexMatrix lift(const ComplexMatrix& c, std::size_t s) const;
  // target += B_s block B_s^dag
  void add_block(ComplexMatrix& target, const ComplexMatrix& block, std::size_t s) const;

  // Largest entry of S m S^dag - m over the symmetries.
  double commutation_defect(const ComplexMatrix& m) const;
  // Throws ValidationError if the defect exceeds tol * max|m|.
  void require_commutes(const ComplexMatrix& m, double tol, const char* what) const;

 private:
  struct Sector {
    std::string label;
    std::vector<std::size_t> offsets{0};
    std::vector<std::size_t> index;
    std::vector<double> coef;
  };
  std::size_t dim_;
  std::vector<BasisSymmetry> symmetries_;
  std::vector<Sector> sectors_;
  bool partition_ = true;
};

// Spectrum computed block by block, merged in ascending order.
struct SectorSpectrum {
  std::vector<EigenSystem> blocks;  // vectors empty when not requested
  RealVector energies;
  // (sector, index within block) for every merged energy.
  std::vector<std::pair<std::size_t, std::size_t>> origin;
};

SectorSpectrum sector_spectrum(const ComplexMatrix& h, const SectorDecomposition& sectors,
                               bool with_vectors);

// The lowest `count` eigenpairs lifted back to the full space.
EigenSystem lowest_states(const SectorSpectrum& spectrum,
                          const SectorDecomposition& sectors, std::size_t count);

}  // namespace spinlab
