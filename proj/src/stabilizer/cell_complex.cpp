#include "spinlab/stabilizer/cell_complex.hpp"

#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "spinlab/core/error.hpp"

namespace spinlab {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

CellComplex::CellComplex(std::string name, std::size_t n_vertices,
                         std::vector<std::pair<std::size_t, std::size_t>> edges,
                         std::vector<std::vector<std::size_t>> faces,
                         std::vector<std::size_t> relative_vertices,
                         std::vector<std::size_t> relative_edges)
    : name_(std::move(name)),
      n_vertices_(n_vertices),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      vertex_edges_(n_vertices),
      edge_faces_(edges_.size()),
      relative_vertex_(n_vertices, false),
      relative_edge_(edges_.size(), false),
      qubit_of_edge_(edges_.size(), npos) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [a, b] = edges_[e];
    if (a >= n_vertices_ || b >= n_vertices_)
      throw ValidationError(name_ + ": edge " + std::to_string(e) + " has an unknown endpoint");
    vertex_edges_[a].push_back(e);
    if (b != a) vertex_edges_[b].push_back(e);
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].empty()) throw ValidationError(name_ + ": empty face");
    std::map<std::size_t, int> parity;
    for (std::size_t e : faces_[f]) {
      if (e >= edges_.size())
        throw ValidationError(name_ + ": face " + std::to_string(f) + " has an unknown edge");
      edge_faces_[e].push_back(f);
      ++parity[edges_[e].first];
      ++parity[edges_[e].second];
    }
    for (auto [v, count] : parity)
      if (count % 2 != 0)
        throw ValidationError(name_ + ": face " + std::to_string(f) + " is not a closed loop");
  }
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edge_faces_[e].size() > 2)
      throw ValidationError(name_ + ": inconsistent gluing, edge " + std::to_string(e) +
                            " lies in more than two faces");

  for (std::size_t v : relative_vertices) {
    if (v >= n_vertices_) throw ValidationError(name_ + ": unknown relative vertex");
    relative_vertex_[v] = true;
  }
  for (std::size_t e : relative_edges) {
    if (e >= edges_.size()) throw ValidationError(name_ + ": unknown relative edge");
    if (!relative_vertex_[edges_[e].first] || !relative_vertex_[edges_[e].second])
      throw ValidationError(name_ + ": relative edge with an endpoint outside the subcomplex");
    relative_edge_[e] = true;
  }
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (!relative_edge_[e]) {
      qubit_of_edge_[e] = n_qubits_++;
      edge_of_qubit_.push_back(e);
    }

  UnionFind uf(n_vertices_);
  std::set<std::size_t> touched;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edge_faces_[e].size() < 2) {
      uf.unite(edges_[e].first, edges_[e].second);
      touched.insert(edges_[e].first);
      touched.insert(edges_[e].second);
    }
  std::set<std::size_t> roots;
  for (std::size_t v : touched) roots.insert(uf.find(v));
  boundary_components_ = roots.size();
}

long CellComplex::euler_characteristic() const {
  return static_cast<long>(n_vertices_) - static_cast<long>(edges_.size()) +
         static_cast<long>(faces_.size());
}

long CellComplex::genus() const {
  return (2 - euler_characteristic() - static_cast<long>(boundary_components_)) / 2;
}

CellComplex torus(int lx, int ly) {
  if (lx < 2 || ly < 2) throw ValidationError("torus: Lx and Ly must be at least 2");
  const auto vid = [&](int x, int y) {
    return static_cast<std::size_t>(((y + ly) % ly) * lx + (x + lx) % lx);
  };
  const auto h = [&](int x, int y) { return 2 * vid(x, y); };
  const auto v = [&](int x, int y) { return 2 * vid(x, y) + 1; };
  std::vector<std::pair<std::size_t, std::size_t>> edges(static_cast<std::size_t>(2 * lx * ly));
  std::vector<std::vector<std::size_t>> faces;
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) {
      edges[h(x, y)] = {vid(x, y), vid(x + 1, y)};
      edges[v(x, y)] = {vid(x, y), vid(x, y + 1)};
      faces.push_back({h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)});
    }
  return CellComplex("torus(" + std::to_string(lx) + "," + std::to_string(ly) + ")",
                     static_cast<std::size_t>(lx * ly), std::move(edges), std::move(faces));
}

CellComplex planar(int lx, int ly, PlanarBoundary boundary) {
  if (lx < 2 || ly < 2) throw ValidationError("planar: Lx and Ly must be at least 2");
  if (boundary == PlanarBoundary::mixed && lx < 3)
    throw ValidationError("planar: mixed boundary needs Lx >= 3");
  const auto vid = [&](int x, int y) { return static_cast<std::size_t>(y * lx + x); };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<std::pair<int, int>, std::size_t> hor, ver;
  std::vector<std::size_t> rel_vertices, rel_edges;
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) {
      const bool rough_column = boundary == PlanarBoundary::mixed && (x == 0 || x == lx - 1);
      if (rough_column) rel_vertices.push_back(vid(x, y));
      if (x + 1 < lx) {
        hor[{x, y}] = edges.size();
        edges.emplace_back(vid(x, y), vid(x + 1, y));
      }
      if (y + 1 < ly) {
        ver[{x, y}] = edges.size();
        if (rough_column) rel_edges.push_back(edges.size());
        edges.emplace_back(vid(x, y), vid(x, y + 1));
      }
    }
  std::vector<std::vector<std::size_t>> faces;
  for (int y = 0; y + 1 < ly; ++y)
    for (int x = 0; x + 1 < lx; ++x)
      faces.push_back({hor[{x, y}], ver[{x + 1, y}], hor[{x, y + 1}], ver[{x, y}]});
  const std::string kind = boundary == PlanarBoundary::smooth ? "smooth" : "mixed";
  return CellComplex("planar(" + std::to_string(lx) + "," + std::to_string(ly) + "," + kind + ")",
                     static_cast<std::size_t>(lx * ly), std::move(edges), std::move(faces),
                     std::move(rel_vertices), std::move(rel_edges));
}

CellComplex square_tiled(std::string name, const std::vector<std::size_t>& right,
                         const std::vector<std::size_t>& up, int k) {
  const std::size_t n = right.size();
  if (n == 0 || up.size() != n) throw ValidationError("square-tiled surface: bad gluing data");
  for (const auto* perm : {&right, &up}) {
    std::vector<bool> seen(n, false);
    for (std::size_t i : *perm) {
      if (i >= n || seen[i]) throw ValidationError("square-tiled surface: gluing is not a permutation");
      seen[i] = true;
    }
  }
  if (k < 1) throw ValidationError("square-tiled surface: subdivision must be positive");
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t side = kk + 1;
  auto point = [&](std::size_t i, std::size_t a, std::size_t b) { return (i * side + a) * side + b; };
  UnionFind uf(n * side * side);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t <= kk; ++t) {
      uf.unite(point(i, kk, t), point(right[i], 0, t));
      uf.unite(point(i, t, kk), point(up[i], t, 0));
    }
  std::map<std::size_t, std::size_t> vertex_of_root;
  auto vertex = [&](std::size_t p) {
    const auto root = uf.find(p);
    auto [it, inserted] = vertex_of_root.try_emplace(root, vertex_of_root.size());
    return it->second;
  };

  // Edges owned by (square, a, b) with a, b < k; indices wrap into neighbours.
  auto hor = [&](std::size_t i, std::size_t a, std::size_t b) {
    if (b == kk) {
      i = up[i];
      b = 0;
    }
    return 2 * ((i * kk + a) * kk + b);
  };
  auto ver = [&](std::size_t i, std::size_t a, std::size_t b) {
    if (a == kk) {
      i = right[i];
      a = 0;
    }
    return 2 * ((i * kk + a) * kk + b) + 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges(2 * n * kk * kk);
  std::vector<std::vector<std::size_t>> faces;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < kk; ++a)
      for (std::size_t b = 0; b < kk; ++b) {
        edges[hor(i, a, b)] = {vertex(point(i, a, b)), vertex(point(i, a + 1, b))};
        edges[ver(i, a, b)] = {vertex(point(i, a, b)), vertex(point(i, a, b + 1))};
        faces.push_back({hor(i, a, b), ver(i, a + 1, b), hor(i, a, b + 1), ver(i, a, b)});
      }
  return CellComplex(std::move(name), vertex_of_root.size(), std::move(edges), std::move(faces));
}

CellComplex genus_surface(int g, int k) {
  if (g < 1) throw ValidationError("genus surface: g must be at least 1");
  const auto n = static_cast<std::size_t>(2 * g - 1);
  std::vector<std::size_t> right(n), up(n);
  std::iota(right.begin(), right.end(), 0);
  std::iota(up.begin(), up.end(), 0);
  for (std::size_t i = 0; i + 1 < n; i += 2) std::swap(right[i], right[i + 1]);
  for (std::size_t i = 1; i + 1 < n; i += 2) std::swap(up[i], up[i + 1]);
  CellComplex c = square_tiled("genus" + std::to_string(g), right, up, k);
  if (c.euler_characteristic() != 2 - 2 * g || c.has_boundary())
    throw NumericalError("genus surface: Euler characteristic " +
                         std::to_string(c.euler_characteristic()) + " does not match genus " +
                         std::to_string(g));
  return c;
}

CellComplex load_cell_complex(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cell complex: ") + e.what());
  }
  try {
    std::map<long long, std::size_t> index;
    for (const auto& v : doc.at("vertices")) {
      const auto id = v.get<long long>();
      if (!index.try_emplace(id, index.size()).second)
        throw ValidationError("cell complex: repeated vertex id " + std::to_string(id));
    }
    auto lookup = [&](long long id) {
      auto it = index.find(id);
      if (it == index.end()) throw ValidationError("cell complex: unknown vertex id " + std::to_string(id));
      return it->second;
    };
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : doc.at("edges")) {
      if (e.size() != 2) throw ValidationError("cell complex: edges need two endpoints");
      edges.emplace_back(lookup(e[0].get<long long>()), lookup(e[1].get<long long>()));
    }
    std::vector<std::vector<std::size_t>> faces;
    for (const auto& f : doc.at("faces")) faces.push_back(f.get<std::vector<std::size_t>>());
    std::vector<std::size_t> rel_v, rel_e;
    if (doc.contains("relative_vertices"))
      for (const auto& v : doc["relative_vertices"]) rel_v.push_back(lookup(v.get<long long>()));
    if (doc.contains("relative_edges")) rel_e = doc["relative_edges"].get<std::vector<std::size_t>>();
    return CellComplex(doc.value("name", std::string("custom")), index.size(), std::move(edges),
                       std::move(faces), std::move(rel_v), std::move(rel_e));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cell complex: ") + e.what());
  }
}

}  // namespace spinlab
