#pragma once

// Brute-force references shared by the unit and acceptance tests. Deliberately written
// without the library's GF(2) and graph code so that agreement means something.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hypsc/surface.hpp"

namespace oracle {

using Mask = std::uint64_t;

// Row-echelon span over GF(2) for vectors of at most 64 bits.
class Span {
 public:
  bool insert(Mask v) {
    v = reduce(v);
    if (v == 0) {
      return false;
    }
    rows_.push_back(v);
    std::sort(rows_.begin(), rows_.end(), std::greater<>());
    return true;
  }
  Mask reduce(Mask v) const {
    for (Mask r : rows_) {
      v = std::min(v, v ^ r);
    }
    return v;
  }
  bool contains(Mask v) const { return reduce(v) == 0; }
  std::size_t rank() const { return rows_.size(); }

 private:
  // Sorted descending, each with a distinct leading bit, so min(v, v ^ r) clears leads in order.
  std::vector<Mask> rows_;
};

// Null space of the map x -> (popcount(row & x) mod 2)_rows on `n` bits.
inline std::vector<Mask> null_space(const std::vector<Mask>& rows, std::size_t n) {
  // Gauss-Jordan on the columns of the transposed system.
  std::vector<Mask> r = rows;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < r.size(); ++c) {
    const Mask bit = Mask{1} << c;
    auto it = std::find_if(r.begin() + static_cast<long>(rank), r.end(), [&](Mask m) { return (m & bit) != 0; });
    if (it == r.end()) {
      continue;
    }
    std::swap(*it, r[rank]);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i != rank && (r[i] & bit)) {
        r[i] ^= r[rank];
      }
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<Mask> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), f) != pivot_cols.end()) {
      continue;
    }
    Mask v = Mask{1} << f;
    for (std::size_t i = 0; i < rank; ++i) {
      if (r[i] & (Mask{1} << f)) {
        v |= Mask{1} << pivot_cols[i];
      }
    }
    basis.push_back(v);
  }
  return basis;
}

struct CycleCount {
  std::size_t d = 0;
  std::size_t count = 0;
};

// Enumerates every element of ker(checks) and keeps those outside span(stabilisers): the
// minimum weight and how many operators attain it.
inline CycleCount enumerate_logicals(const std::vector<Mask>& checks, const std::vector<Mask>& stabilisers,
                                     std::size_t n) {
  const std::vector<Mask> kernel = null_space(checks, n);
  if (kernel.size() > 26) {
    throw std::invalid_argument("oracle: kernel too large to enumerate");
  }
  Span boundaries;
  for (Mask s : stabilisers) {
    boundaries.insert(s);
  }
  CycleCount best{std::numeric_limits<std::size_t>::max(), 0};
  Mask v = 0;
  const std::uint64_t total = std::uint64_t{1} << kernel.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    v ^= kernel[static_cast<std::size_t>(std::countr_zero(i))];  // Gray code step
    const auto w = static_cast<std::size_t>(std::popcount(v));
    if (w > best.d || boundaries.contains(v)) {
      continue;
    }
    if (w < best.d) {
      best = {w, 0};
    }
    ++best.count;
  }
  return best;
}

// Vertex stars and face boundaries of a surface with at most 64 edges.
struct SurfaceMasks {
  std::vector<Mask> vertices;
  std::vector<Mask> faces;
};

inline SurfaceMasks surface_masks(const hypsc::TiledSurface& s) {
  if (s.edge_count() > 64) {
    throw std::invalid_argument("oracle: more than 64 edges");
  }
  SurfaceMasks m{std::vector<Mask>(s.vertex_count(), 0), {}};
  for (std::size_t e = 0; e < s.edge_count(); ++e) {
    m.vertices[s.edge(e).u] ^= Mask{1} << e;
    m.vertices[s.edge(e).v] ^= Mask{1} << e;
  }
  for (const auto& f : s.faces()) {
    Mask b = 0;
    for (std::size_t e : f) {
      b ^= Mask{1} << e;
    }
    m.faces.push_back(b);
  }
  return m;
}

// Z-type: cycles of the primal graph that are not face boundaries.
inline CycleCount brute_force_z(const hypsc::TiledSurface& s) {
  const SurfaceMasks m = surface_masks(s);
  return enumerate_logicals(m.vertices, m.faces, s.edge_count());
}

// X-type: cocycles (even overlap with every face) that are not vertex stars.
inline CycleCount brute_force_x(const hypsc::TiledSurface& s) {
  const SurfaceMasks m = surface_masks(s);
  return enumerate_logicals(m.faces, m.vertices, s.edge_count());
}

// Minimum perfect matching weight of the complete graph by exhaustive recursion.
inline std::int64_t brute_force_mwpm(std::size_t n, const std::vector<std::int64_t>& w) {
  std::vector<bool> used(n, false);
  std::function<std::int64_t()> rec = [&]() -> std::int64_t {
    std::size_t i = 0;
    while (i < n && used[i]) {
      ++i;
    }
    if (i == n) {
      return 0;
    }
    used[i] = true;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!used[j]) {
        used[j] = true;
        best = std::min(best, w[i * n + j] + rec());
        used[j] = false;
      }
    }
    used[i] = false;
    return best;
  };
  return rec();
}

struct Edge {
  std::size_t u;
  std::size_t v;
  std::int64_t w;
};

// Maximum matching weight of a general graph (any cardinality); with `max_cardinality`
// the maximum is taken over matchings of maximum size. Returns (size, weight).
inline std::pair<std::size_t, std::int64_t> brute_force_max_matching(std::size_t n, const std::vector<Edge>& edges,
                                                                     bool max_cardinality) {
  std::pair<std::size_t, std::int64_t> best{0, 0};
  std::vector<bool> used(n, false);
  std::function<void(std::size_t, std::size_t, std::int64_t)> rec = [&](std::size_t k, std::size_t size,
                                                                        std::int64_t weight) {
    if (k == edges.size()) {
      const bool better = max_cardinality ? (size > best.first || (size == best.first && weight > best.second))
                                          : weight > best.second;
      if (better) {
        best = {size, weight};
      }
      return;
    }
    rec(k + 1, size, weight);
    const Edge& e = edges[k];
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = true;
      rec(k + 1, size + 1, weight + e.w);
      used[e.u] = used[e.v] = false;
    }
  };
  rec(0, 0, 0);
  return best;
}

}  // namespace oracle
