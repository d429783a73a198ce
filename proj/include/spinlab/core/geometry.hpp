#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spinlab {

enum class BoundaryCondition { open, periodic };

// Finite set of sites with per-site Hilbert dimensions and an integer metric.
//
// Sites are kept in ascending id order; that order fixes the tensor-leg
// convention (first site = most significant factor of the global index).
// Construction validates the metric axioms and the dense budget.
class LatticeGeometry {
 public:
  // distance is row-major n x n, indexed in the order of site_ids as given.
  LatticeGeometry(std::vector<int> site_ids, std::vector<int> local_dims,
                  std::vector<int> distance, std::string kind = "custom");

  // Sites 1..n, nearest neighbours at distance 1.
  static LatticeGeometry chain(int n, BoundaryCondition bc, int local_dim = 2);

  // Graph metric (shortest path) from an undirected edge list over site ids.
  static LatticeGeometry from_graph(std::vector<int> site_ids,
                                    std::vector<int> local_dims,
                                    const std::vector<std::pair<int, int>>& edges,
                                    std::string kind = "graph");

  std::size_t n_sites() const { return sites_.size(); }
  std::span<const int> sites() const { return sites_; }
  const std::string& kind() const { return kind_; }
  BoundaryCondition boundary() const { return boundary_; }

  bool contains(int site) const;
  // Position in canonical order; throws ValidationError for unknown ids.
  std::size_t position(int site) const;
  int local_dim(int site) const { return dims_[position(site)]; }
  std::span<const int> local_dims() const { return dims_; }

  int distance(int a, int b) const;
  // d(X, Y) = min over pairs.
  int distance(std::span<const int> x, std::span<const int> y) const;
  int diameter(std::span<const int> x) const;
  std::vector<int> ball(int center, int radius) const;
  int eccentricity(int center) const;

  std::size_t dimension() const { return total_dim_; }
  std::size_t dimension_of(std::span<const int> support) const;
  // Multiplier of the site's digit in the global basis index.
  std::size_t stride(int site) const { return strides_[position(site)]; }

  // Throws ValidationError unless every id is a site and ids are distinct.
  void require_subset(std::span<const int> support, const char* what) const;

 private:
  std::vector<int> sites_;
  std::vector<int> dims_;
  std::vector<int> dist_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
  std::string kind_;
  BoundaryCondition boundary_ = BoundaryCondition::open;
};

}  // namespace spinlab
