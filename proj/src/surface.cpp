#include "hypsc/surface.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace hypsc {

namespace {

std::size_t other_end(const Edge& e, std::size_t x) { return e.u == x ? e.v : e.u; }

bool incident(const Edge& e, std::size_t x) { return e.u == x || e.v == x; }

// Walks a face boundary starting from `start`; returns the corner sequence or empty on failure.
std::vector<std::size_t> walk_face(const std::vector<Edge>& edges, const std::vector<std::size_t>& face,
                                   std::size_t start) {
  std::vector<std::size_t> corners;
  corners.reserve(face.size());
  std::size_t x = start;
  for (std::size_t e : face) {
    if (!incident(edges[e], x)) {
      return {};
    }
    corners.push_back(x);
    x = other_end(edges[e], x);
  }
  if (x != start) {
    return {};
  }
  return corners;
}

}  // namespace

TiledSurface::TiledSurface(std::string name, std::size_t vertex_count, std::vector<Edge> edges,
                           std::vector<std::vector<std::size_t>> faces)
    : name_(std::move(name)), vertex_count_(vertex_count), edges_(std::move(edges)), faces_(std::move(faces)) {
  vertex_edges_.assign(vertex_count_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.u >= vertex_count_ || edge.v >= vertex_count_) {
      throw std::invalid_argument("edge " + std::to_string(e) + " references a missing vertex");
    }
    if (edge.u == edge.v) {
      throw std::invalid_argument("edge " + std::to_string(e) + " is a self-loop");
    }
    vertex_edges_[edge.u].push_back(e);
    vertex_edges_[edge.v].push_back(e);
  }

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  edge_faces_.assign(edges_.size(), {kUnset, kUnset});
  std::vector<std::size_t> occurrences(edges_.size(), 0);
  corners_.reserve(faces_.size());
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const auto& face = faces_[f];
    if (face.empty()) {
      throw std::invalid_argument("face " + std::to_string(f) + " is empty");
    }
    for (std::size_t e : face) {
      if (e >= edges_.size()) {
        throw std::invalid_argument("face " + std::to_string(f) + " references a missing edge");
      }
      auto& slot = edge_faces_[e];
      (slot.first == kUnset ? slot.first : slot.second) = f;
      ++occurrences[e];
    }
    auto corners = walk_face(edges_, face, edges_[face.front()].u);
    if (corners.empty()) {
      corners = walk_face(edges_, face, edges_[face.front()].v);
    }
    if (corners.empty()) {
      throw std::invalid_argument("face " + std::to_string(f) + " is not a closed edge walk");
    }
    corners_.push_back(std::move(corners));
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (occurrences[e] != 2) {
      throw std::invalid_argument("edge " + std::to_string(e) + " lies on " + std::to_string(occurrences[e]) +
                                  " face sides (a closed surface needs exactly 2)");
    }
  }
  if (euler_characteristic() % 2 != 0) {
    throw std::invalid_argument("Euler characteristic is odd");
  }
}

Topology euler_genus(const TiledSurface& s) {
  const long chi = s.euler_characteristic();
  if (chi % 2 != 0) {
    throw std::invalid_argument("euler_genus: odd Euler characteristic");
  }
  if (chi > 2) {
    throw std::invalid_argument("euler_genus: Euler characteristic exceeds 2");
  }
  const auto genus = static_cast<std::size_t>((2 - chi) / 2);
  return {chi, genus, 2 * genus};
}

const char* to_string(Side side) noexcept { return side == Side::Z ? "Z" : "X"; }

CheckGraph CheckGraph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
  CheckGraph g;
  g.node_count = node_count;
  g.edges = std::move(edges);
  g.incidence.assign(node_count, {});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& edge = g.edges[e];
    g.incidence[edge.u].emplace_back(e, edge.v);
    if (edge.v != edge.u) {
      g.incidence[edge.v].emplace_back(e, edge.u);
    }
  }
  return g;
}

std::vector<gf2::BitVec> CssCode::crossing_basis(Side side) const {
  std::vector<gf2::BitVec> out;
  out.reserve(logical_pairs.size());
  for (const auto& pair : logical_pairs) {
    out.push_back(side == Side::Z ? pair.x : pair.z);
  }
  return out;
}

std::vector<gf2::BitVec> CssCode::logical_basis(Side side) const {
  std::vector<gf2::BitVec> out;
  out.reserve(logical_pairs.size());
  for (const auto& pair : logical_pairs) {
    out.push_back(side == Side::Z ? pair.z : pair.x);
  }
  return out;
}

CssCode derive_code(const TiledSurface& s) {
  const Topology topo = euler_genus(s);
  CssCode code;
  code.name = s.name();
  code.n = s.edge_count();

  code.h_x = gf2::BitMatrix(s.vertex_count(), code.n);
  for (std::size_t e = 0; e < code.n; ++e) {
    code.h_x.set(s.edge(e).u, e);
    code.h_x.set(s.edge(e).v, e);
  }
  code.h_z = gf2::BitMatrix(s.face_count(), code.n);
  for (std::size_t f = 0; f < s.face_count(); ++f) {
    for (std::size_t e : s.face(f)) {
      code.h_z.flip(f, e);
    }
  }

  const std::size_t rank_x = gf2::rank(code.h_x);
  const std::size_t rank_z = gf2::rank(code.h_z);
  code.k = code.n - rank_x - rank_z;
  if (code.k != topo.k) {
    throw std::logic_error("derive_code: k = " + std::to_string(code.k) + " disagrees with 2g = " +
                           std::to_string(topo.k));
  }

  const auto z_reps = gf2::quotient_basis(gf2::kernel_basis(code.h_x), code.h_z.row_vectors());
  const auto x_reps = gf2::quotient_basis(gf2::kernel_basis(code.h_z), code.h_x.row_vectors());
  if (z_reps.size() != code.k || x_reps.size() != code.k) {
    throw std::logic_error("derive_code: homology dimension mismatch");
  }
  code.logical_pairs = gf2::symplectic_pair(z_reps, x_reps);

  code.primal = CheckGraph::from_edges(s.vertex_count(), s.edges());
  std::vector<Edge> dual_edges;
  dual_edges.reserve(code.n);
  for (std::size_t e = 0; e < code.n; ++e) {
    const auto [f1, f2] = s.edge_faces(e);
    dual_edges.push_back({f1, f2});
  }
  code.dual = CheckGraph::from_edges(s.face_count(), std::move(dual_edges));
  return code;
}

std::vector<std::pair<std::size_t, std::size_t>> weight_census(const gf2::BitMatrix& checks) {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& row : checks.row_vectors()) {
    ++hist[row.popcount()];
  }
  return {hist.begin(), hist.end()};
}

}  // namespace hypsc
