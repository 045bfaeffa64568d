#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hypsc/gf2.hpp"
#include "hypsc/surface.hpp"

namespace hypsc {

/// Two copies G, G' of a check graph. Edges in the support of `crossing` are replaced by
/// cross-over edges (u,v') and (u',v), so a v -> v' path projects to a cycle of G with odd
/// overlap with `crossing`. Node x of G' is node_count + x.
class DoubledGraph {
 public:
  DoubledGraph(const CheckGraph& g, const gf2::BitVec& crossing);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t base_node_count() const noexcept { return base_; }
  /// (neighbour, qubit) pairs.
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbours(std::size_t x) const noexcept {
    return adjacency_[x];
  }

  /// Breadth-first distances from `source` (unreachable nodes get SIZE_MAX).
  std::vector<std::size_t> bfs(std::size_t source) const;

 private:
  std::size_t base_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

struct DistanceOptions {
  /// Bound on predecessor-DAG steps while enumerating tied shortest paths.
  std::size_t path_cap = 10'000'000;
};

/// Minimum weight of a nontrivial logical of type `side`.
std::size_t min_weight_logical(const CssCode& code, Side side);

/// One nontrivial logical of type `side` of minimum weight.
gf2::BitVec find_min_weight_logical(const CssCode& code, Side side);

struct MinWeightLogicals {
  std::size_t d = 0;
  /// Distinct operators, sorted by support.
  std::vector<gf2::BitVec> operators;
};

/// All nontrivial logicals of type `side` with weight exactly d.
/// Throws std::runtime_error when the path cap is exceeded.
MinWeightLogicals min_weight_logicals(const CssCode& code, Side side, const DistanceOptions& options = {});

/// (d, N_d).
std::pair<std::size_t, std::size_t> count_min_weight(const CssCode& code, Side side,
                                                     const DistanceOptions& options = {});

/// Fills code.d_z and code.d_x.
void compute_distances(CssCode& code);

/// True iff `op` is a logical of type `side`: commutes with all checks and anticommutes with
/// some element of the crossing basis.
bool is_nontrivial_logical(const CssCode& code, Side side, const gf2::BitVec& op);

}  // namespace hypsc
