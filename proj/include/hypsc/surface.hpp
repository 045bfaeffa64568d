#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypsc/gf2.hpp"

namespace hypsc {

struct Edge {
  std::size_t u;
  std::size_t v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A closed surface cellulated by vertices, edges and polygonal faces.
///
/// Faces are cyclic edge-index sequences. Orientation is per face and need not be
/// globally consistent. Edges are identified by index, so parallel edges are fine;
/// self-loops are rejected because a vertex star would count them twice.
class TiledSurface {
 public:
  TiledSurface() = default;

  /// Validates and builds. Throws std::invalid_argument on a malformed complex.
  TiledSurface(std::string name, std::size_t vertex_count, std::vector<Edge> edges,
               std::vector<std::vector<std::size_t>> faces);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t face_count() const noexcept { return faces_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const noexcept { return edges_[e]; }
  const std::vector<std::vector<std::size_t>>& faces() const noexcept { return faces_; }
  const std::vector<std::size_t>& face(std::size_t f) const noexcept { return faces_[f]; }

  /// Corner vertices of face f: corner i is where face edge i starts, walking the
  /// boundary in stored order.
  const std::vector<std::size_t>& face_corners(std::size_t f) const noexcept { return corners_[f]; }

  /// The two faces incident to edge e (equal if the edge occurs twice in one face).
  std::pair<std::size_t, std::size_t> edge_faces(std::size_t e) const noexcept { return edge_faces_[e]; }

  /// Edges incident to vertex v, in edge-index order.
  const std::vector<std::size_t>& vertex_edges(std::size_t v) const noexcept { return vertex_edges_[v]; }

  long euler_characteristic() const noexcept {
    return static_cast<long>(vertex_count_) - static_cast<long>(edges_.size()) + static_cast<long>(faces_.size());
  }

  friend bool operator==(const TiledSurface& a, const TiledSurface& b) {
    return a.name_ == b.name_ && a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_ &&
           a.faces_ == b.faces_;
  }

 private:
  std::string name_;
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> faces_;
  std::vector<std::vector<std::size_t>> corners_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_faces_;
  std::vector<std::vector<std::size_t>> vertex_edges_;
};

struct Topology {
  long chi;
  std::size_t genus;
  std::size_t k;
};

/// chi = |V| - |E| + |F|, g = (2 - chi) / 2, k = 2g. Throws on odd chi.
Topology euler_genus(const TiledSurface& s);

/// Which Pauli type an operator (logical or error) has.
/// Z-type operators live on edges of the primal graph and are detected by X-checks
/// (vertices); X-type operators live on the dual graph and are detected by Z-checks (faces).
enum class Side { Z, X };

const char* to_string(Side side) noexcept;

/// Undirected multigraph whose edge indices are the qubits of the code.
struct CheckGraph {
  std::size_t node_count = 0;
  std::vector<Edge> edges;
  /// incidence[v] lists (edge, neighbour) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence;

  static CheckGraph from_edges(std::size_t node_count, std::vector<Edge> edges);
};

struct CssCode {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  gf2::BitMatrix h_x;  ///< |V| x n, vertex stars
  gf2::BitMatrix h_z;  ///< |F| x n, face boundaries
  std::vector<gf2::LogicalPair> logical_pairs;
  std::optional<std::size_t> d_z;
  std::optional<std::size_t> d_x;
  CheckGraph primal;  ///< nodes = vertices (X-checks)
  CheckGraph dual;    ///< nodes = faces (Z-checks)

  const CheckGraph& graph(Side side) const noexcept { return side == Side::Z ? primal : dual; }
  /// Checks that detect errors of type `side`.
  const gf2::BitMatrix& checks(Side side) const noexcept { return side == Side::Z ? h_x : h_z; }
  /// Logical operators of the opposite type, used to test nontriviality of `side` cycles.
  std::vector<gf2::BitVec> crossing_basis(Side side) const;
  /// Logical operators of type `side`.
  std::vector<gf2::BitVec> logical_basis(Side side) const;
};

/// Builds the homological CSS code: Z-checks on faces, X-checks on vertices, qubits on edges.
CssCode derive_code(const TiledSurface& s);

/// Check weights (row popcounts) as a sorted histogram of (weight, count).
std::vector<std::pair<std::size_t, std::size_t>> weight_census(const gf2::BitMatrix& checks);

}  // namespace hypsc
