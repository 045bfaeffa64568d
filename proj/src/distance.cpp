#include "hypsc/distance.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace hypsc {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

const std::vector<gf2::BitVec>& require_basis(const std::vector<gf2::BitVec>& basis) {
  if (basis.empty()) {
    throw std::invalid_argument("distance: code has no logical basis (k = 0)");
  }
  return basis;
}

struct Candidate {
  std::size_t length = kInf;
  std::size_t basis_index = 0;
  std::size_t start = 0;
};

// Endpoints of the edges in the support of `crossing`, deduplicated.
std::vector<std::size_t> crossing_endpoints(const CheckGraph& g, const gf2::BitVec& crossing) {
  std::vector<std::size_t> out;
  for (std::size_t e : crossing.support()) {
    out.push_back(g.edges[e].u);
    out.push_back(g.edges[e].v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Candidate shortest(const CssCode& code, Side side) {
  const CheckGraph& g = code.graph(side);
  const auto basis = code.crossing_basis(side);
  require_basis(basis);
  Candidate best;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const DoubledGraph dg(g, basis[i]);
    for (std::size_t v : crossing_endpoints(g, basis[i])) {
      const std::size_t d = dg.bfs(v)[g.node_count + v];
      if (d < best.length) {
        best = {d, i, v};
      }
    }
  }
  if (best.length == kInf) {
    throw std::runtime_error("distance: no v -> v' path in the doubled graph (disconnected)");
  }
  return best;
}

// Walks the predecessor DAG of a BFS back from `target`, invoking `emit` with the qubits of
// every shortest path until it returns true. `budget` counts DAG steps.
template <typename Emit>
void enumerate_paths(const DoubledGraph& dg, const std::vector<std::size_t>& dist, std::size_t target,
                     std::size_t& budget, Emit&& emit) {
  struct Frame {
    std::size_t node;
    std::size_t next;  // index into neighbours(node)
  };
  std::vector<Frame> stack{{target, 0}};
  std::vector<std::size_t> path;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (dist[top.node] == 0) {
      if (emit(path)) {
        return;
      }
      stack.pop_back();
      if (!path.empty()) {
        path.pop_back();
      }
      continue;
    }
    const auto& nbrs = dg.neighbours(top.node);
    bool descended = false;
    while (top.next < nbrs.size()) {
      const auto [x, qubit] = nbrs[top.next++];
      if (dist[x] != kInf && dist[x] + 1 == dist[top.node]) {
        if (budget-- == 0) {
          throw std::runtime_error("distance: shortest-path enumeration cap exceeded");
        }
        path.push_back(qubit);
        stack.push_back({x, 0});
        descended = true;
        break;
      }
    }
    if (!descended) {
      stack.pop_back();
      if (!path.empty()) {
        path.pop_back();
      }
    }
  }
}

}  // namespace

DoubledGraph::DoubledGraph(const CheckGraph& g, const gf2::BitVec& crossing) : base_(g.node_count) {
  if (crossing.size() != g.edges.size()) {
    throw std::invalid_argument("DoubledGraph: crossing vector has the wrong length");
  }
  adjacency_.assign(2 * base_, {});
  auto link = [this](std::size_t a, std::size_t b, std::size_t q) {
    adjacency_[a].emplace_back(b, q);
    adjacency_[b].emplace_back(a, q);
    ++edge_count_;
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    if (crossing.get(e)) {
      link(u, base_ + v, e);
      link(base_ + u, v, e);
    } else {
      link(u, v, e);
      link(base_ + u, base_ + v, e);
    }
  }
}

std::vector<std::size_t> DoubledGraph::bfs(std::size_t source) const {
  std::vector<std::size_t> dist(node_count(), kInf);
  std::vector<std::size_t> queue;
  queue.reserve(node_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t x = queue[head];
    for (const auto& [y, q] : adjacency_[x]) {
      if (dist[y] == kInf) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::size_t min_weight_logical(const CssCode& code, Side side) { return shortest(code, side).length; }

gf2::BitVec find_min_weight_logical(const CssCode& code, Side side) {
  const Candidate c = shortest(code, side);
  const CheckGraph& g = code.graph(side);
  const DoubledGraph dg(g, code.crossing_basis(side)[c.basis_index]);
  const auto dist = dg.bfs(c.start);
  std::size_t budget = std::numeric_limits<std::size_t>::max();
  gf2::BitVec found;
  enumerate_paths(dg, dist, g.node_count + c.start, budget, [&](const std::vector<std::size_t>& path) {
    gf2::BitVec op(code.n);
    for (std::size_t q : path) {
      op.flip(q);
    }
    if (op.popcount() == c.length && is_nontrivial_logical(code, side, op)) {
      found = std::move(op);
      return true;
    }
    return false;
  });
  if (found.size() == 0) {
    throw std::logic_error("find_min_weight_logical: shortest path did not project to a logical");
  }
  return found;
}

MinWeightLogicals min_weight_logicals(const CssCode& code, Side side, const DistanceOptions& options) {
  const CheckGraph& g = code.graph(side);
  const auto basis = code.crossing_basis(side);
  const std::size_t d = shortest(code, side).length;
  std::set<std::vector<std::uint64_t>> seen;
  MinWeightLogicals out;
  out.d = d;
  std::size_t budget = options.path_cap;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const DoubledGraph dg(g, basis[i]);
    for (std::size_t v : crossing_endpoints(g, basis[i])) {
      const auto dist = dg.bfs(v);
      if (dist[g.node_count + v] != d) {
        continue;
      }
      enumerate_paths(dg, dist, g.node_count + v, budget, [&](const std::vector<std::size_t>& path) {
        gf2::BitVec op(code.n);
        for (std::size_t q : path) {
          op.flip(q);
        }
        if (op.popcount() != d) {
          return false;
        }
        std::vector<std::uint64_t> key(op.words().begin(), op.words().end());
        if (seen.count(key) != 0) {
          return false;
        }
        bool nontrivial = false;
        for (const auto& x : basis) {
          nontrivial = nontrivial || op.dot(x);
        }
        if (nontrivial) {
          seen.insert(std::move(key));
          out.operators.push_back(std::move(op));
        }
        return false;
      });
    }
  }
  std::sort(out.operators.begin(), out.operators.end(),
            [](const gf2::BitVec& a, const gf2::BitVec& b) { return a.support() < b.support(); });
  return out;
}

std::pair<std::size_t, std::size_t> count_min_weight(const CssCode& code, Side side, const DistanceOptions& options) {
  const auto result = min_weight_logicals(code, side, options);
  return {result.d, result.operators.size()};
}

void compute_distances(CssCode& code) {
  code.d_z = min_weight_logical(code, Side::Z);
  code.d_x = min_weight_logical(code, Side::X);
}

bool is_nontrivial_logical(const CssCode& code, Side side, const gf2::BitVec& op) {
  if (code.checks(side).multiply(op).any()) {
    return false;
  }
  for (const auto& x : code.crossing_basis(side)) {
    if (op.dot(x)) {
      return true;
    }
  }
  return false;
}

}  // namespace hypsc
