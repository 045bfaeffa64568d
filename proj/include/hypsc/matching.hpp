#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hypsc::matching {

struct WeightedEdge {
  std::size_t u;
  std::size_t v;
  std::int64_t weight;
};

/// Maximum-weight matching on a general graph (Edmonds' blossom algorithm with dual
/// variables, O(n^3)). With `max_cardinality`, maximises weight among maximum-cardinality
/// matchings. Returns mate[v] or -1.
std::vector<long> max_weight_matching(std::size_t node_count, const std::vector<WeightedEdge>& edges,
                                      bool max_cardinality = false);

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

/// Minimum-weight perfect matching on the complete graph with integer weights
/// w[i * n + j] (symmetric). Throws std::invalid_argument for odd n.
Pairs mwpm(std::size_t n, const std::vector<std::int64_t>& w);

/// Same with real weights, quantised to multiples of 1e-6.
Pairs mwpm(const std::vector<std::vector<double>>& w);

}  // namespace hypsc::matching
