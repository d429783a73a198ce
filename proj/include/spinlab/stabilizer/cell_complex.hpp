#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

// Two-dimensional cell complex: vertices 0..V-1, edges as vertex pairs,
// faces as lists of edge indices forming closed loops. An optional relative
// subcomplex (vertices and edges) models rough boundaries: its edges carry
// no qubit and its vertices carry no star.
class CellComplex {
 public:
  CellComplex(std::string name, std::size_t n_vertices,
              std::vector<std::pair<std::size_t, std::size_t>> edges,
              std::vector<std::vector<std::size_t>> faces,
              std::vector<std::size_t> relative_vertices = {},
              std::vector<std::size_t> relative_edges = {});

  const std::string& name() const { return name_; }
  std::size_t n_vertices() const { return n_vertices_; }
  std::size_t n_edges() const { return edges_.size(); }
  std::size_t n_faces() const { return faces_.size(); }
  const std::pair<std::size_t, std::size_t>& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<std::size_t>& face(std::size_t f) const { return faces_[f]; }
  const std::vector<std::size_t>& vertex_edges(std::size_t v) const { return vertex_edges_[v]; }
  const std::vector<std::size_t>& edge_faces(std::size_t e) const { return edge_faces_[e]; }

  long euler_characteristic() const;
  // Edges in fewer than two faces.
  bool has_boundary() const { return boundary_components_ > 0; }
  std::size_t boundary_components() const { return boundary_components_; }
  // (2 - chi - b) / 2 for a connected orientable surface with b boundary circles.
  long genus() const;

  bool is_relative_vertex(std::size_t v) const { return relative_vertex_[v]; }
  bool is_relative_edge(std::size_t e) const { return relative_edge_[e]; }
  // Qubit index per edge (edges outside the relative subcomplex), else npos.
  std::size_t qubit(std::size_t e) const { return qubit_of_edge_[e]; }
  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t edge_of_qubit(std::size_t q) const { return edge_of_qubit_[q]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::string name_;
  std::size_t n_vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> faces_;
  std::vector<std::vector<std::size_t>> vertex_edges_;
  std::vector<std::vector<std::size_t>> edge_faces_;
  std::vector<bool> relative_vertex_;
  std::vector<bool> relative_edge_;
  std::vector<std::size_t> qubit_of_edge_;
  std::vector<std::size_t> edge_of_qubit_;
  std::size_t n_qubits_ = 0;
  std::size_t boundary_components_ = 0;
};

// Lx x Ly square grid with periodic identifications. Vertex (x, y) has index
// y * Lx + x; horizontal edge (x, y) -> (x+1, y) has index 2 (y Lx + x) and
// the vertical edge (x, y) -> (x, y+1) the next index.
CellComplex torus(int lx, int ly);

enum class PlanarBoundary { smooth, mixed };

// Lx x Ly vertex grid, a disk. `mixed` makes the left and right sides rough
// (relative subcomplex: the two outer vertex columns and their vertical edges).
CellComplex planar(int lx, int ly, PlanarBoundary boundary = PlanarBoundary::smooth);

// Square-tiled surface: square i has right neighbour right[i] and top
// neighbour up[i]; each square is subdivided into k x k cells.
CellComplex square_tiled(std::string name, const std::vector<std::size_t>& right,
                         const std::vector<std::size_t>& up, int k);

// Closed genus-g surface from a staircase of 2g - 1 squares (g >= 1);
// the Euler characteristic is checked against 2 - 2g.
CellComplex genus_surface(int g, int k = 2);

// {"vertices": [ids], "edges": [[v, v]], "faces": [[edge indices]],
//  optional "name", "relative_vertices": [ids], "relative_edges": [indices]}
CellComplex load_cell_complex(const std::string& json_text);

}  // namespace spinlab
