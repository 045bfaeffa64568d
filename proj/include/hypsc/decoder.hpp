#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hypsc/gf2.hpp"
#include "hypsc/surface.hpp"

namespace hypsc {

using Rng = std::mt19937_64;

/// Phenomenological noise: each round every qubit suffers an error of the decoded type with
/// probability p and every check outcome is flipped with probability q. Rounds 0 and T+1 have
/// perfect syndromes, so T+1 syndrome differences ("slices") are decoded.
struct NoiseParams {
  double p = 0.0;
  double q = 0.0;
  std::size_t T = 1;
  /// Qubit errors also strike before the perfect round T+1 (one error round per slice).
  bool final_round_errors = false;

  /// The standard model: T+1 error rounds when checks are noisy; with perfect checks the
  /// closing round is redundant and there are T error rounds.
  static NoiseParams make(double p, double q, std::size_t T) { return {p, q, T, q > 0.0}; }

  void validate() const;
};

/// T+1 copies of a check graph joined by vertical (measurement) edges. Node id = slice * N + v.
/// Unit weights when q == p (or q == 0, which drops the vertical edges); otherwise
/// log-likelihood weights ln((1-p)/p) and ln((1-q)/q) scaled to integers.
class SpaceTimeGraph {
 public:
  SpaceTimeGraph(const CheckGraph& g, const NoiseParams& noise);

  std::size_t slices() const noexcept { return slices_; }
  std::size_t node_count() const noexcept { return slices_ * base_->node_count; }
  std::size_t horizontal_edge_count() const noexcept { return slices_ * base_->edges.size(); }
  std::size_t vertical_edge_count() const noexcept { return vertical_ ? (slices_ - 1) * base_->node_count : 0; }
  const CheckGraph& base() const noexcept { return *base_; }
  bool unit_weights() const noexcept { return unit_; }
  std::int64_t horizontal_weight() const noexcept { return w_h_; }
  std::int64_t vertical_weight() const noexcept { return w_v_; }

  /// Calls f(neighbour, qubit or SIZE_MAX for a vertical edge, weight).
  template <typename F>
  void for_each_neighbour(std::size_t node, F&& f) const {
    const std::size_t n = base_->node_count;
    const std::size_t s = node / n;
    const std::size_t v = node % n;
    for (const auto& [e, w] : base_->incidence[v]) {
      f(s * n + w, e, w_h_);
    }
    if (vertical_) {
      if (s > 0) {
        f(node - n, kVertical, w_v_);
      }
      if (s + 1 < slices_) {
        f(node + n, kVertical, w_v_);
      }
    }
  }

  static constexpr std::size_t kVertical = static_cast<std::size_t>(-1);

 private:
  const CheckGraph* base_;
  std::size_t slices_;
  bool vertical_;
  bool unit_;
  std::int64_t w_h_ = 1;
  std::int64_t w_v_ = 1;
};

/// One sampled run of T noisy rounds for errors of type `side`.
struct SyndromeHistory {
  Side side = Side::Z;
  std::size_t T = 0;
  /// new_errors[t-1]: qubits that flipped in round t (1..T, or 1..T+1 with final-round errors).
  std::vector<std::vector<std::size_t>> new_errors;
  /// flips[t-1]: checks whose outcome was flipped in round t (1..T).
  std::vector<std::vector<std::size_t>> flips;
  /// Detection events as space-time node ids (slice * N + check), sorted.
  std::vector<std::size_t> marked;

  /// Accumulated error after the last round.
  gf2::BitVec total_error(std::size_t n) const;
};

SyndromeHistory sample_history(const CssCode& code, const NoiseParams& noise, Side side, Rng& rng);

/// Points where consecutive syndromes differ (rounds 0 and T+1 perfect), sorted.
std::vector<std::size_t> mark_vertices(const CssCode& code, const SyndromeHistory& h);

/// Raw syndrome of round t (0..T+1) recomputed from the history.
gf2::BitVec syndrome_at(const CssCode& code, const SyndromeHistory& h, std::size_t t);

/// Shortest-path matching decoder on a space-time graph. Holds scratch buffers; one instance
/// per thread.
class MatchingDecoder {
 public:
  explicit MatchingDecoder(const SpaceTimeGraph& graph) : graph_(&graph) {}

  /// Correction projected onto the final slice: qubits used an odd number of times by the
  /// matched shortest paths. Ties between equal paths are broken at random from `rng`.
  gf2::BitVec decode(const std::vector<std::size_t>& marked, Rng& rng);

  /// Total weight of the last matching (in graph weight units).
  std::int64_t last_matching_weight() const noexcept { return last_weight_; }

 private:
  void shortest_from(std::size_t source);

  const SpaceTimeGraph* graph_;
  std::vector<std::int64_t> dist_;
  std::vector<std::size_t> touched_;
  std::vector<std::size_t> queue_;
  std::vector<std::uint8_t> is_target_;
  std::size_t target_count_ = 0;
  std::int64_t last_weight_ = 0;
};

/// True iff the residual true ^ inferred anticommutes with some crossing logical.
/// Throws std::logic_error if the residual is not a cycle.
bool adjudicate(const CssCode& code, Side side, const gf2::BitVec& true_error, const gf2::BitVec& inferred);

}  // namespace hypsc
