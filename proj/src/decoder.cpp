#include "hypsc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "hypsc/matching.hpp"

namespace hypsc {

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();
constexpr double kWeightScale = 1e6;

// Indices in [0, count) hit by independent Bernoulli(prob) trials, via geometric skips.
template <typename F>
void bernoulli_hits(std::size_t count, double prob, Rng& rng, F&& hit) {
  if (prob <= 0.0 || count == 0) {
    return;
  }
  std::geometric_distribution<std::size_t> skip(prob);
  for (std::size_t i = skip(rng); i < count; i += 1 + skip(rng)) {
    hit(i);
  }
}

std::int64_t log_weight(double prob) {
  return static_cast<std::int64_t>(std::llround(kWeightScale * std::log((1.0 - prob) / prob)));
}

}  // namespace

void NoiseParams::validate() const {
  if (!(p >= 0.0 && p < 0.5) || !(q >= 0.0 && q < 0.5)) {
    throw std::invalid_argument("NoiseParams: p and q must lie in [0, 1/2)");
  }
  if (T < 1) {
    throw std::invalid_argument("NoiseParams: T must be at least 1");
  }
}

SpaceTimeGraph::SpaceTimeGraph(const CheckGraph& g, const NoiseParams& noise)
    : base_(&g), slices_(noise.T + 1), vertical_(noise.q > 0.0) {
  noise.validate();
  unit_ = noise.q == 0.0 || noise.q == noise.p || noise.p == 0.0;
  if (!unit_) {
    w_h_ = log_weight(noise.p);
    w_v_ = log_weight(noise.q);
  }
}

gf2::BitVec SyndromeHistory::total_error(std::size_t n) const {
  gf2::BitVec e(n);
  for (const auto& round : new_errors) {
    for (std::size_t q : round) {
      e.flip(q);
    }
  }
  return e;
}

SyndromeHistory sample_history(const CssCode& code, const NoiseParams& noise, Side side, Rng& rng) {
  noise.validate();
  const CheckGraph& g = code.graph(side);
  SyndromeHistory h;
  h.side = side;
  h.T = noise.T;
  const std::size_t error_rounds = noise.T + (noise.final_round_errors ? 1 : 0);
  h.new_errors.resize(error_rounds);
  h.flips.resize(noise.T);
  for (std::size_t t = 0; t < error_rounds; ++t) {
    bernoulli_hits(code.n, noise.p, rng, [&](std::size_t q) { h.new_errors[t].push_back(q); });
    if (t < noise.T) {
      bernoulli_hits(g.node_count, noise.q, rng, [&](std::size_t c) { h.flips[t].push_back(c); });
    }
  }
  h.marked = mark_vertices(code, h);
  return h;
}

std::vector<std::size_t> mark_vertices(const CssCode& code, const SyndromeHistory& h) {
  // Difference of rounds t and t-1 is H E_t + f_t + f_{t-1}; slice t-1 holds it.
  const CheckGraph& g = code.graph(h.side);
  const std::size_t n = g.node_count;
  std::vector<std::size_t> toggles;
  for (std::size_t t = 1; t <= h.T + 1; ++t) {
    const std::size_t base = (t - 1) * n;
    if (t <= h.new_errors.size()) {
      for (std::size_t q : h.new_errors[t - 1]) {
        toggles.push_back(base + g.edges[q].u);
        toggles.push_back(base + g.edges[q].v);
      }
    }
    if (t <= h.T) {
      for (std::size_t c : h.flips[t - 1]) {
        toggles.push_back(base + c);
      }
    }
    if (t >= 2) {
      for (std::size_t c : h.flips[t - 2]) {
        toggles.push_back(base + c);
      }
    }
  }
  std::sort(toggles.begin(), toggles.end());
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < toggles.size();) {
    std::size_t j = i;
    while (j < toggles.size() && toggles[j] == toggles[i]) {
      ++j;
    }
    if ((j - i) % 2 == 1) {
      marked.push_back(toggles[i]);
    }
    i = j;
  }
  return marked;
}

gf2::BitVec syndrome_at(const CssCode& code, const SyndromeHistory& h, std::size_t t) {
  if (t > h.T + 1) {
    throw std::out_of_range("syndrome_at: round beyond T+1");
  }
  gf2::BitVec cumulative(code.n);
  for (std::size_t r = 1; r <= std::min(t, h.new_errors.size()); ++r) {
    for (std::size_t q : h.new_errors[r - 1]) {
      cumulative.flip(q);
    }
  }
  gf2::BitVec s = code.checks(h.side).multiply(cumulative);
  if (t >= 1 && t <= h.T) {
    for (std::size_t c : h.flips[t - 1]) {
      s.flip(c);
    }
  }
  return s;
}

void MatchingDecoder::shortest_from(std::size_t source) {
  const SpaceTimeGraph& g = *graph_;
  if (dist_.size() != g.node_count()) {
    dist_.assign(g.node_count(), kUnreached);
    is_target_.assign(g.node_count(), 0);
  }
  for (std::size_t x : touched_) {
    dist_[x] = kUnreached;
  }
  touched_.clear();
  std::size_t remaining = target_count_;
  dist_[source] = 0;
  touched_.push_back(source);
  if (is_target_[source]) {
    --remaining;
  }
  if (g.unit_weights()) {
    // Stop once every target is discovered: all nodes of smaller depth are known by then.
    queue_.clear();
    queue_.push_back(source);
    for (std::size_t head = 0; head < queue_.size() && remaining > 0; ++head) {
      const std::size_t x = queue_[head];
      g.for_each_neighbour(x, [&](std::size_t y, std::size_t, std::int64_t) {
        if (dist_[y] == kUnreached) {
          dist_[y] = dist_[x] + 1;
          touched_.push_back(y);
          queue_.push_back(y);
          if (is_target_[y]) {
            --remaining;
          }
        }
      });
    }
    return;
  }
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  while (!heap.empty() && remaining > 0) {
    const auto [d, x] = heap.top();
    heap.pop();
    if (d != dist_[x]) {
      continue;
    }
    if (is_target_[x] && x != source) {
      --remaining;
    }
    g.for_each_neighbour(x, [&](std::size_t y, std::size_t, std::int64_t w) {
      if (d + w < dist_[y]) {
        if (dist_[y] == kUnreached) {
          touched_.push_back(y);
        }
        dist_[y] = d + w;
        heap.push({dist_[y], y});
      }
    });
  }
}

gf2::BitVec MatchingDecoder::decode(const std::vector<std::size_t>& marked, Rng& rng) {
  const SpaceTimeGraph& g = *graph_;
  const std::size_t n_qubits = g.base().edges.size();
  gf2::BitVec correction(n_qubits);
  last_weight_ = 0;
  if (marked.empty()) {
    return correction;
  }
  if (marked.size() % 2 != 0) {
    throw std::invalid_argument("decode: odd number of marked vertices");
  }
  if (dist_.size() != g.node_count()) {
    dist_.assign(g.node_count(), kUnreached);
    is_target_.assign(g.node_count(), 0);
  }
  // Random enumeration order so ties in the matching are not biased by labels.
  std::vector<std::size_t> nodes = marked;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  const std::size_t m = nodes.size();
  // Searches stop early once every marked vertex is reached.
  for (std::size_t x : nodes) {
    is_target_[x] = 1;
  }
  target_count_ = m;
  // Pairs in different components (separate slices when q = 0) get a prohibitive weight.
  constexpr std::int64_t kFar = std::int64_t{1} << 40;
  std::vector<std::int64_t> w(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    shortest_from(nodes[i]);
    for (std::size_t j = 0; j < m; ++j) {
      const std::int64_t d = dist_[nodes[j]];
      w[i * m + j] = d == kUnreached ? kFar : d;
    }
  }
  const auto pairs = matching::mwpm(m, w);
  for (const auto& [i, j] : pairs) {
    if (w[i * m + j] == kFar) {
      for (std::size_t x : nodes) {
        is_target_[x] = 0;
      }
      throw std::runtime_error("decode: a component holds an odd number of marked vertices");
    }
    last_weight_ += w[i * m + j];
    shortest_from(nodes[i]);
    // Walk back from nodes[j], choosing uniformly among tight predecessors.
    std::size_t x = nodes[j];
    std::vector<std::pair<std::size_t, std::size_t>> options;
    while (x != nodes[i]) {
      options.clear();
      g.for_each_neighbour(x, [&](std::size_t y, std::size_t qubit, std::int64_t wt) {
        if (dist_[y] != kUnreached && dist_[y] + wt == dist_[x]) {
          options.emplace_back(y, qubit);
        }
      });
      if (options.empty()) {
        throw std::logic_error("decode: broken shortest-path tree");
      }
      const auto& pick =
          options.size() == 1 ? options.front()
                              : options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      if (pick.second != SpaceTimeGraph::kVertical) {
        correction.flip(pick.second);
      }
      x = pick.first;
    }
  }
  for (std::size_t x : nodes) {
    is_target_[x] = 0;
  }
  return correction;
}

bool adjudicate(const CssCode& code, Side side, const gf2::BitVec& true_error, const gf2::BitVec& inferred) {
  const gf2::BitVec residual = true_error ^ inferred;
  if (code.checks(side).multiply(residual).any()) {
    throw std::logic_error("adjudicate: residual error is not a cycle");
  }
  for (const auto& x : code.crossing_basis(side)) {
    if (residual.dot(x)) {
      return true;
    }
  }
  return false;
}

}  // namespace hypsc
