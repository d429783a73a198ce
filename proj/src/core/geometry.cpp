#include "spinlab/core/geometry.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include "spinlab/core/error.hpp"
#include "spinlab/core/types.hpp"

namespace spinlab {

LatticeGeometry::LatticeGeometry(std::vector<int> site_ids,
                                 std::vector<int> local_dims,
                                 std::vector<int> distance, std::string kind)
    : kind_(std::move(kind)) {
  const std::size_t n = site_ids.size();
  if (n == 0) throw ValidationError("geometry: no sites");
  if (local_dims.size() != n)
    throw ValidationError("geometry: local_dims size does not match sites");
  if (distance.size() != n * n)
    throw ValidationError("geometry: distance matrix must be n x n");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return site_ids[a] < site_ids[b]; });
  for (std::size_t i = 1; i < n; ++i)
    if (site_ids[order[i]] == site_ids[order[i - 1]])
      throw ValidationError("geometry: duplicate site id " +
                            std::to_string(site_ids[order[i]]));

  sites_.resize(n);
  dims_.resize(n);
  dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    sites_[i] = site_ids[order[i]];
    dims_[i] = local_dims[order[i]];
    if (dims_[i] < 2)
      throw ValidationError("geometry: local dimension must be >= 2");
    for (std::size_t j = 0; j < n; ++j)
      dist_[i * n + j] = distance[order[i] * n + order[j]];
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (dist_[i * n + i] != 0)
      throw ValidationError("geometry: d(x,x) must be 0");
    for (std::size_t j = 0; j < n; ++j) {
      const int dij = dist_[i * n + j];
      if (dij != dist_[j * n + i])
        throw ValidationError("geometry: distance is not symmetric");
      if (i != j && dij <= 0)
        throw ValidationError("geometry: distinct sites need positive distance");
      for (std::size_t k = 0; k < n; ++k)
        if (dij > dist_[i * n + k] + dist_[k * n + j])
          throw ValidationError("geometry: triangle inequality violated");
    }
  }

  strides_.assign(n, 1);
  for (std::size_t i = n; i-- > 0;) {
    strides_[i] = total_dim_;
    if (total_dim_ > kMaxDenseDim / static_cast<std::size_t>(dims_[i]))
      throw SizeError("geometry: total Hilbert dimension exceeds the dense budget of " +
                      std::to_string(kMaxDenseDim));
    total_dim_ *= static_cast<std::size_t>(dims_[i]);
  }
}

LatticeGeometry LatticeGeometry::chain(int n, BoundaryCondition bc, int local_dim) {
  if (n < 1) throw ValidationError("chain: need at least one site");
  std::vector<int> ids(n), dims(n, local_dim), dist(static_cast<std::size_t>(n) * n);
  std::iota(ids.begin(), ids.end(), 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int d = std::abs(i - j);
      if (bc == BoundaryCondition::periodic) d = std::min(d, n - d);
      dist[static_cast<std::size_t>(i) * n + j] = d;
    }
  LatticeGeometry g(std::move(ids), std::move(dims), std::move(dist),
                    bc == BoundaryCondition::periodic ? "chain-periodic" : "chain-open");
  g.boundary_ = bc;
  return g;
}

LatticeGeometry LatticeGeometry::from_graph(
    std::vector<int> site_ids, std::vector<int> local_dims,
    const std::vector<std::pair<int, int>>& edges, std::string kind) {
  const std::size_t n = site_ids.size();
  auto index_of = [&](int id) {
    const auto it = std::find(site_ids.begin(), site_ids.end(), id);
    if (it == site_ids.end())
      throw ValidationError("graph geometry: unknown site " + std::to_string(id));
    return static_cast<std::size_t>(it - site_ids.begin());
  };
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    const auto ia = index_of(a), ib = index_of(b);
    adj[ia].push_back(ib);
    adj[ib].push_back(ia);
  }
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> dist(n * n, kUnreached);
  for (std::size_t s = 0; s < n; ++s) {
    std::deque<std::size_t> queue{s};
    dist[s * n + s] = 0;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : adj[u])
        if (dist[s * n + v] == kUnreached) {
          dist[s * n + v] = dist[s * n + u] + 1;
          queue.push_back(v);
        }
    }
  }
  if (std::find(dist.begin(), dist.end(), kUnreached) != dist.end())
    throw ValidationError("graph geometry: graph is disconnected");
  return LatticeGeometry(std::move(site_ids), std::move(local_dims), std::move(dist),
                         std::move(kind));
}

bool LatticeGeometry::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

std::size_t LatticeGeometry::position(int site) const {
  const auto it = std::lower_bound(sites_.begin(), sites_.end(), site);
  if (it == sites_.end() || *it != site)
    throw ValidationError("unknown site id " + std::to_string(site));
  return static_cast<std::size_t>(it - sites_.begin());
}

int LatticeGeometry::distance(int a, int b) const {
  return dist_[position(a) * sites_.size() + position(b)];
}

int LatticeGeometry::distance(std::span<const int> x, std::span<const int> y) const {
  if (x.empty() || y.empty()) throw ValidationError("distance: empty set");
  int best = std::numeric_limits<int>::max();
  for (int a : x)
    for (int b : y) best = std::min(best, distance(a, b));
  return best;
}

int LatticeGeometry::diameter(std::span<const int> x) const {
  int best = 0;
  for (int a : x)
    for (int b : x) best = std::max(best, distance(a, b));
  return best;
}

std::vector<int> LatticeGeometry::ball(int center, int radius) const {
  std::vector<int> out;
  for (int s : sites_)
    if (distance(center, s) <= radius) out.push_back(s);
  return out;
}

int LatticeGeometry::eccentricity(int center) const {
  int best = 0;
  for (int s : sites_) best = std::max(best, distance(center, s));
  return best;
}

std::size_t LatticeGeometry::dimension_of(std::span<const int> support) const {
  std::size_t d = 1;
  for (int s : support) d *= static_cast<std::size_t>(local_dim(s));
  return d;
}

void LatticeGeometry::require_subset(std::span<const int> support,
                                     const char* what) const {
  std::set<int> seen;
  for (int s : support) {
    if (!contains(s))
      throw ValidationError(std::string(what) + ": site " + std::to_string(s) +
                            " is not in the lattice");
    if (!seen.insert(s).second)
      throw ValidationError(std::string(what) + ": repeated site " + std::to_string(s));
  }
}

}  // namespace spinlab
