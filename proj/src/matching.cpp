#include "hypsc/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Port of the classic primal-dual blossom algorithm (Galil's presentation, as popularised
// by J. van Rantwijk's mwmatching). Endpoint p of edge k is 2k (u) or 2k+1 (v); mate and
// labelend hold remote endpoints. Weights are doubled internally so dual updates stay integral.

namespace hypsc::matching {

namespace {

constexpr long kNone = -1;

class Blossom {
 public:
  Blossom(std::size_t n, const std::vector<WeightedEdge>& edges, bool max_cardinality)
      : n_(static_cast<long>(n)), max_cardinality_(max_cardinality) {
    for (const auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw std::invalid_argument("max_weight_matching: edge endpoint out of range");
      }
      if (e.u == e.v) {
        continue;
      }
      edges_.push_back({static_cast<long>(e.u), static_cast<long>(e.v), 2 * e.weight});
    }
    const long m = static_cast<long>(edges_.size());
    std::int64_t max_weight = 0;
    for (const auto& e : edges_) {
      max_weight = std::max(max_weight, e.w);
    }
    endpoint_.resize(2 * m);
    neighbend_.assign(n, {});
    for (long k = 0; k < m; ++k) {
      endpoint_[2 * k] = edges_[k].i;
      endpoint_[2 * k + 1] = edges_[k].j;
      neighbend_[edges_[k].i].push_back(2 * k + 1);
      neighbend_[edges_[k].j].push_back(2 * k);
    }
    mate_.assign(n, kNone);
    label_.assign(2 * n, 0);
    labelend_.assign(2 * n, kNone);
    inblossom_.resize(n);
    for (long v = 0; v < n_; ++v) {
      inblossom_[v] = v;
    }
    blossomparent_.assign(2 * n, kNone);
    blossomchilds_.assign(2 * n, {});
    blossombase_.assign(2 * n, kNone);
    for (long v = 0; v < n_; ++v) {
      blossombase_[v] = v;
    }
    blossomendps_.assign(2 * n, {});
    bestedge_.assign(2 * n, kNone);
    blossombestedges_.assign(2 * n, {});
    has_bestedges_.assign(2 * n, false);
    for (long b = 2 * n_ - 1; b >= n_; --b) {
      unused_.push_back(b);
    }
    dualvar_.assign(2 * n, 0);
    for (long v = 0; v < n_; ++v) {
      dualvar_[v] = max_weight;
    }
    allowedge_.assign(m, false);
  }

  std::vector<long> solve() {
    for (long stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), kNone);
      for (long b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (long v = 0; v < n_; ++v) {
        if (mate_[v] == kNone && label_[inblossom_[v]] == 0) {
          assign_label(v, 1, kNone);
        }
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const long v = queue_.back();
          queue_.pop_back();
          for (long p : neighbend_[v]) {
            const long k = p / 2;
            const long w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) {
              continue;
            }
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) {
                allowedge_[k] = true;
              }
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const long base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const long b = inblossom_[v];
              if (bestedge_[b] == kNone || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == kNone || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) {
          break;
        }

        int deltatype = -1;
        std::int64_t delta = 0;
        long deltaedge = kNone;
        long deltablossom = kNone;
        if (!max_cardinality_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (long v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != kNone) {
            const std::int64_t d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (long b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == kNone && label_[b] == 1 && bestedge_[b] != kNone) {
            const std::int64_t kslack = slack(bestedge_[b]);
            if (kslack % 2 != 0) {
              throw std::logic_error("max_weight_matching: odd slack between S-blossoms");
            }
            const std::int64_t d = kslack / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (long b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == kNone && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max<std::int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
        }

        for (long v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (long b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == kNone) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;
        }
        if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          long i = edges_[deltaedge].i;
          if (label_[inblossom_[i]] == 0) {
            i = edges_[deltaedge].j;
          }
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(edges_[deltaedge].i);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) {
        break;
      }
      for (long b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == kNone && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<long> mate(static_cast<std::size_t>(n_), kNone);
    for (long v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) {
        mate[v] = endpoint_[mate_[v]];
      }
    }
    return mate;
  }

 private:
  struct E {
    long i;
    long j;
    std::int64_t w;
  };

  std::int64_t slack(long k) const { return dualvar_[edges_[k].i] + dualvar_[edges_[k].j] - 2 * edges_[k].w; }

  void leaves(long b, std::vector<long>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (long t : blossomchilds_[b]) {
      leaves(t, out);
    }
  }

  std::vector<long> leaves(long b) const {
    std::vector<long> out;
    leaves(b, out);
    return out;
  }

  static long wrap(long j, long len) { return ((j % len) + len) % len; }

  void assign_label(long w, int t, long p) {
    const long b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = kNone;
    if (t == 1) {
      leaves(b, queue_);
    } else {
      const long base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  long scan_blossom(long v, long w) {
    std::vector<long> path;
    long base = kNone;
    while (v != kNone || w != kNone) {
      long b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == kNone) {
        v = kNone;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != kNone) {
        std::swap(v, w);
      }
    }
    for (long b : path) {
      label_[b] = 1;
    }
    return base;
  }

  void add_blossom(long base, long k) {
    long v = edges_[k].i;
    long w = edges_[k].j;
    const long bb = inblossom_[base];
    long bv = inblossom_[v];
    long bw = inblossom_[w];
    const long b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = kNone;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (long leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) {
        queue_.push_back(leaf);
      }
      inblossom_[leaf] = b;
    }
    std::vector<long> bestedgeto(2 * static_cast<std::size_t>(n_), kNone);
    for (long child : path) {
      std::vector<std::vector<long>> nblists;
      if (!has_bestedges_[child]) {
        for (long leaf : leaves(child)) {
          std::vector<long> list;
          for (long p : neighbend_[leaf]) {
            list.push_back(p / 2);
          }
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& list : nblists) {
        for (long kk : list) {
          long i = edges_[kk].i;
          long j = edges_[kk].j;
          if (inblossom_[j] == b) {
            std::swap(i, j);
          }
          const long bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == kNone || slack(kk) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = kk;
          }
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = false;
      bestedge_[child] = kNone;
    }
    blossombestedges_[b].clear();
    for (long kk : bestedgeto) {
      if (kk != kNone) {
        blossombestedges_[b].push_back(kk);
      }
    }
    has_bestedges_[b] = true;
    bestedge_[b] = kNone;
    for (long kk : blossombestedges_[b]) {
      if (bestedge_[b] == kNone || slack(kk) < slack(bestedge_[b])) {
        bestedge_[b] = kk;
      }
    }
  }

  void expand_blossom(long b, bool endstage) {
    for (long s : blossomchilds_[b]) {
      blossomparent_[s] = kNone;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (long leaf : leaves(s)) {
          inblossom_[leaf] = s;
        }
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& childs = blossomchilds_[b];
      const auto& endps = blossomendps_[b];
      const long len = static_cast<long>(childs.size());
      const long entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      long j = static_cast<long>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      long jstep;
      long endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      long p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, len)] / 2] = true;
        j += jstep;
        p = endps[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      long bv = childs[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = kNone;
      j += jstep;
      while (childs[wrap(j, len)] != entrychild) {
        bv = childs[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        long labelled = kNone;
        for (long leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            labelled = leaf;
            break;
          }
        }
        if (labelled != kNone) {
          label_[labelled] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(labelled, 2, labelend_[labelled]);
        }
        j += jstep;
      }
    }
    label_[b] = 0;
    labelend_[b] = kNone;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = kNone;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = kNone;
    unused_.push_back(b);
  }

  void augment_blossom(long b, long v) {
    long t = v;
    while (blossomparent_[t] != b) {
      t = blossomparent_[t];
    }
    if (t >= n_) {
      augment_blossom(t, v);
    }
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const long len = static_cast<long>(childs.size());
    const long i = static_cast<long>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    long j = i;
    long jstep;
    long endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, len)];
      const long p = endps[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= n_) {
        augment_blossom(t, endpoint_[p]);
      }
      j += jstep;
      t = childs[wrap(j, len)];
      if (t >= n_) {
        augment_blossom(t, endpoint_[p ^ 1]);
      }
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(long k) {
    const long ends[2][2] = {{edges_[k].i, 2 * k + 1}, {edges_[k].j, 2 * k}};
    for (const auto& start : ends) {
      long s = start[0];
      long p = start[1];
      while (true) {
        const long bs = inblossom_[s];
        if (bs >= n_) {
          augment_blossom(bs, s);
        }
        mate_[s] = p;
        if (labelend_[bs] == kNone) {
          break;
        }
        const long t = endpoint_[labelend_[bs]];
        const long bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const long j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) {
          augment_blossom(bt, j);
        }
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  long n_;
  bool max_cardinality_;
  std::vector<E> edges_;
  std::vector<long> endpoint_;
  std::vector<std::vector<long>> neighbend_;
  std::vector<long> mate_;
  std::vector<int> label_;
  std::vector<long> labelend_;
  std::vector<long> inblossom_;
  std::vector<long> blossomparent_;
  std::vector<std::vector<long>> blossomchilds_;
  std::vector<long> blossombase_;
  std::vector<std::vector<long>> blossomendps_;
  std::vector<long> bestedge_;
  std::vector<std::vector<long>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<long> unused_;
  std::vector<std::int64_t> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<long> queue_;
};

}  // namespace

std::vector<long> max_weight_matching(std::size_t node_count, const std::vector<WeightedEdge>& edges,
                                      bool max_cardinality) {
  if (node_count == 0) {
    return {};
  }
  return Blossom(node_count, edges, max_cardinality).solve();
}

Pairs mwpm(std::size_t n, const std::vector<std::int64_t>& w) {
  if (n % 2 != 0) {
    throw std::invalid_argument("mwpm: odd number of nodes");
  }
  if (w.size() != n * n) {
    throw std::invalid_argument("mwpm: weight matrix must be n x n");
  }
  if (n == 0) {
    return {};
  }
  std::int64_t top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i * n + j] < 0) {
        throw std::invalid_argument("mwpm: negative weight");
      }
      top = std::max(top, w[i * n + j]);
    }
  }
  // Maximum cardinality first, then maximum of (top + 1 - w) == minimum total w.
  std::vector<WeightedEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({i, j, top + 1 - w[i * n + j]});
    }
  }
  const auto mate = max_weight_matching(n, edges, true);
  Pairs pairs;
  pairs.reserve(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (mate[i] < 0) {
      throw std::logic_error("mwpm: matching is not perfect");
    }
    if (static_cast<std::size_t>(mate[i]) > i) {
      pairs.emplace_back(i, static_cast<std::size_t>(mate[i]));
    }
  }
  return pairs;
}

Pairs mwpm(const std::vector<std::vector<double>>& w) {
  const std::size_t n = w.size();
  std::vector<std::int64_t> q(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].size() != n) {
      throw std::invalid_argument("mwpm: weight matrix must be square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(w[i][j])) {
        throw std::invalid_argument("mwpm: weights must be finite");
      }
      q[i * n + j] = static_cast<std::int64_t>(std::llround(w[i][j] * 1e6));
    }
  }
  return mwpm(n, q);
}

}  // namespace hypsc::matching
