#include "hypsc/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace hypsc::group {

Word parse_word(const std::string& text) {
  Word w;
  w.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'R': w.push_back(kRho); break;
      case 'r': w.push_back(kRhoInv); break;
      case 'S': w.push_back(kSigma); break;
      case 's': w.push_back(kSigmaInv); break;
      case ' ': break;
      default: throw std::invalid_argument(std::string("parse_word: unexpected letter '") + ch + "'");
    }
  }
  return w;
}

std::string format_word(const Word& word) {
  static constexpr char kLetters[] = {'R', 'r', 'S', 's'};
  std::string out;
  out.reserve(word.size());
  for (int letter : word) {
    out.push_back(kLetters[letter]);
  }
  return out;
}

std::vector<Word> Presentation::relators() const {
  if (r < 2 || s < 2) {
    throw std::invalid_argument("Presentation: r and s must be at least 2");
  }
  std::vector<Word> rels;
  rels.push_back(Word(static_cast<std::size_t>(r), kRho));
  rels.push_back(Word(static_cast<std::size_t>(s), kSigma));
  rels.push_back({kRho, kSigma, kRho, kSigma});
  for (const auto& w : extra_relators) {
    if (!w.empty()) {
      rels.push_back(w);
    }
  }
  return rels;
}

std::size_t CosetTable::apply(std::size_t coset, const Word& word) const {
  for (int letter : word) {
    coset = action[static_cast<std::size_t>(letter)][coset];
  }
  return coset;
}

namespace {

constexpr int kLetters = 4;
constexpr std::size_t kUndef = static_cast<std::size_t>(-1);

class Enumerator {
 public:
  Enumerator(std::vector<Word> relators, std::size_t max_cosets)
      : relators_(std::move(relators)), max_cosets_(max_cosets) {
    table_.reserve(std::min<std::size_t>(max_cosets_, 1 << 16) * kLetters);
    new_coset();
  }

  CosetTable run() {
    std::size_t c = 0;
    while (c < parent_.size()) {
      if (alive(c)) {
        for (const auto& w : relators_) {
          scan_and_fill(c, w);
          if (!alive(c)) {
            break;
          }
        }
        if (alive(c)) {
          for (int x = 0; x < kLetters && alive(c); ++x) {
            if (at(c, x) == kUndef) {
              define(c, x);
            }
          }
        }
      }
      c = next_alive(c + 1);
    }
    return standardize();
  }

 private:
  std::size_t& at(std::size_t c, int x) { return table_[c * kLetters + static_cast<std::size_t>(x)]; }

  bool alive(std::size_t c) const { return parent_[c] == c; }

  std::size_t next_alive(std::size_t c) const {
    while (c < parent_.size() && !alive(c)) {
      ++c;
    }
    return c;
  }

  std::size_t new_coset() {
    const std::size_t id = parent_.size();
    parent_.push_back(id);
    table_.insert(table_.end(), kLetters, kUndef);
    ++live_;
    return id;
  }

  void define(std::size_t c, int x) {
    if (live_ >= max_cosets_) {
      lookahead();
      if (live_ >= max_cosets_) {
        throw EnumerationOverflow("todd_coxeter: more than " + std::to_string(max_cosets_) + " cosets required");
      }
      if (!alive(c) || at(c, x) != kUndef) {
        return;
      }
    }
    if (parent_.size() >= 4 * max_cosets_ + 64) {
      throw EnumerationOverflow("todd_coxeter: coset workspace exhausted");
    }
    const std::size_t d = new_coset();
    at(c, x) = d;
    at(d, inverse_letter(x)) = c;
  }

  // Relator scan from every live coset without defining new ones.
  void lookahead() {
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      for (const auto& w : relators_) {
        if (!alive(c)) {
          break;
        }
        scan(c, w);
      }
    }
  }

  // Returns true if the scan completed or closed with a deduction.
  void scan(std::size_t c, const Word& w) {
    std::size_t f = c;
    std::size_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();
    while (i < j && at(f, w[i]) != kUndef) {
      f = at(f, w[i]);
      ++i;
    }
    if (i == j) {
      if (f != b) {
        coincidence(f, b);
      }
      return;
    }
    while (j > i && at(b, inverse_letter(w[j - 1])) != kUndef) {
      b = at(b, inverse_letter(w[j - 1]));
      --j;
    }
    if (j == i) {
      coincidence(f, b);
    } else if (j == i + 1) {
      at(f, w[i]) = b;
      at(b, inverse_letter(w[i])) = f;
    }
  }

  void scan_and_fill(std::size_t c, const Word& w) {
    std::size_t f = c;
    std::size_t b = c;
    std::size_t i = 0;
    std::size_t j = w.size();
    while (true) {
      while (i < j && at(f, w[i]) != kUndef) {
        f = at(f, w[i]);
        ++i;
      }
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
        }
        return;
      }
      while (j > i && at(b, inverse_letter(w[j - 1])) != kUndef) {
        b = at(b, inverse_letter(w[j - 1]));
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        at(f, w[i]) = b;
        at(b, inverse_letter(w[i])) = f;
        return;
      }
      define(f, w[i]);
      if (!alive(c)) {
        return;
      }
      if (!alive(f) || !alive(b)) {
        // A coincidence during lookahead invalidated the scan; restart it.
        f = rep(c);
        b = f;
        i = 0;
        j = w.size();
      }
    }
  }

  std::size_t rep(std::size_t k) {
    std::size_t root = k;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[k] != root) {
      const std::size_t next = parent_[k];
      parent_[k] = root;
      k = next;
    }
    return root;
  }

  void merge(std::size_t k, std::size_t l, std::deque<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) {
      return;
    }
    const auto [lo, hi] = std::minmax(k, l);
    parent_[hi] = lo;
    --live_;
    queue.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const std::size_t e = queue.front();
      queue.pop_front();
      for (int x = 0; x < kLetters; ++x) {
        const std::size_t f = at(e, x);
        if (f == kUndef) {
          continue;
        }
        const int xi = inverse_letter(x);
        if (at(f, xi) == e) {
          at(f, xi) = kUndef;
        }
        const std::size_t e1 = rep(e);
        const std::size_t f1 = rep(f);
        if (at(e1, x) != kUndef) {
          merge(f1, at(e1, x), queue);
        } else if (at(f1, xi) != kUndef) {
          merge(e1, at(f1, xi), queue);
        } else {
          at(e1, x) = f1;
          at(f1, xi) = e1;
        }
      }
    }
  }

  CosetTable standardize() {
    std::vector<std::size_t> order;
    std::vector<std::size_t> label(parent_.size(), kUndef);
    const std::size_t root = rep(0);
    label[root] = 0;
    order.push_back(root);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::size_t c = order[head];
      for (int x = 0; x < kLetters; ++x) {
        std::size_t d = at(c, x);
        if (d == kUndef) {
          throw std::logic_error("todd_coxeter: incomplete table after enumeration");
        }
        d = rep(d);
        if (label[d] == kUndef) {
          label[d] = order.size();
          order.push_back(d);
        }
      }
    }
    CosetTable table;
    table.size = order.size();
    table.action.assign(kLetters, std::vector<std::size_t>(table.size));
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int x = 0; x < kLetters; ++x) {
        table.action[static_cast<std::size_t>(x)][i] = label[rep(at(order[i], x))];
      }
    }
    return table;
  }

  std::vector<Word> relators_;
  std::size_t max_cosets_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> parent_;
  std::size_t live_ = 0;
};

// Orbit partition of the permutation `perm`; orbit ids assigned in order of the smallest member.
std::vector<std::vector<std::size_t>> cycles_of(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start]) {
      continue;
    }
    std::vector<std::size_t> cycle;
    for (std::size_t c = start; !seen[c]; c = perm[c]) {
      seen[c] = true;
      cycle.push_back(c);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

}  // namespace

CosetTable todd_coxeter(const Presentation& p, std::size_t max_cosets) {
  if (max_cosets == 0) {
    throw std::invalid_argument("todd_coxeter: max_cosets must be positive");
  }
  Enumerator enumerator(p.relators(), max_cosets);
  CosetTable table = enumerator.run();
  // Relators must act trivially on every coset.
  for (const auto& w : p.relators()) {
    for (std::size_t c = 0; c < table.size; ++c) {
      if (table.apply(c, w) != c) {
        throw std::logic_error("todd_coxeter: relator acts nontrivially on the final table");
      }
    }
  }
  return table;
}

TiledSurface tiling_from_quotient(const CosetTable& table, int r, int s, std::string name) {
  const std::size_t n = table.size;
  const auto& rho = table.action[kRho];
  const auto& sigma = table.action[kSigma];
  std::vector<std::size_t> tau(n);
  for (std::size_t g = 0; g < n; ++g) {
    tau[g] = sigma[rho[g]];
  }

  const auto faces_orbits = cycles_of(rho);
  const auto vertex_orbits = cycles_of(sigma);
  const auto edge_orbits = cycles_of(tau);
  for (const auto& orbit : faces_orbits) {
    if (orbit.size() != static_cast<std::size_t>(r)) {
      throw std::invalid_argument("tiling_from_quotient: <rho> orbit of size " + std::to_string(orbit.size()) +
                                  " (torsion in H)");
    }
  }
  for (const auto& orbit : vertex_orbits) {
    if (orbit.size() != static_cast<std::size_t>(s)) {
      throw std::invalid_argument("tiling_from_quotient: <sigma> orbit of size " + std::to_string(orbit.size()) +
                                  " (torsion in H)");
    }
  }
  for (const auto& orbit : edge_orbits) {
    if (orbit.size() != 2) {
      throw std::invalid_argument("tiling_from_quotient: <tau> orbit of size " + std::to_string(orbit.size()));
    }
  }

  std::vector<std::size_t> vertex_of(n);
  for (std::size_t v = 0; v < vertex_orbits.size(); ++v) {
    for (std::size_t g : vertex_orbits[v]) {
      vertex_of[g] = v;
    }
  }
  std::vector<std::size_t> edge_of(n);
  std::vector<Edge> edges;
  edges.reserve(edge_orbits.size());
  for (std::size_t e = 0; e < edge_orbits.size(); ++e) {
    const std::size_t g = edge_orbits[e].front();
    for (std::size_t h : edge_orbits[e]) {
      edge_of[h] = e;
    }
    // Edge g<tau> joins g<sigma> and g tau<sigma>.
    edges.push_back({vertex_of[g], vertex_of[tau[g]]});
  }
  std::vector<std::vector<std::size_t>> faces;
  faces.reserve(faces_orbits.size());
  for (const auto& orbit : faces_orbits) {
    // Elements g, g rho, g rho^2, ... of the face give consecutive boundary edges.
    std::vector<std::size_t> face;
    face.reserve(orbit.size());
    for (std::size_t g : orbit) {
      face.push_back(edge_of[g]);
    }
    faces.push_back(std::move(face));
  }
  return TiledSurface(std::move(name), vertex_orbits.size(), std::move(edges), std::move(faces));
}

namespace {

// Syllable words (rho^a sigma^b)^m, cyclically reduced, one representative per rotation class.
std::vector<Word> syllable_words(int r, int s, std::size_t max_syllables) {
  std::vector<std::pair<int, int>> syllables;
  for (int a = 1; a < r; ++a) {
    for (int b = 1; b < s; ++b) {
      syllables.emplace_back(a, b);
    }
  }
  std::vector<Word> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t m = 1; m <= max_syllables; ++m) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      // Canonical rotation of the syllable sequence.
      std::vector<std::size_t> best = idx;
      for (std::size_t shift = 1; shift < m; ++shift) {
        std::vector<std::size_t> rot(m);
        for (std::size_t i = 0; i < m; ++i) {
          rot[i] = idx[(i + shift) % m];
        }
        best = std::min(best, rot);
      }
      if (seen.insert(best).second) {
        Word w;
        for (std::size_t i : idx) {
          const auto [a, b] = syllables[i];
          // Use the shorter of rho^a and rho^-(r-a).
          if (2 * a <= r) {
            w.insert(w.end(), static_cast<std::size_t>(a), kRho);
          } else {
            w.insert(w.end(), static_cast<std::size_t>(r - a), kRhoInv);
          }
          if (2 * b <= s) {
            w.insert(w.end(), static_cast<std::size_t>(b), kSigma);
          } else {
            w.insert(w.end(), static_cast<std::size_t>(s - b), kSigmaInv);
          }
        }
        out.push_back(std::move(w));
      }
      std::size_t pos = 0;
      while (pos < m && ++idx[pos] == syllables.size()) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == m) {
        break;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace

std::vector<QuotientCandidate> low_index_normal_subgroups(int r, int s, const QuotientSearchOptions& options) {
  const std::vector<Word> words = syllable_words(r, s, options.max_syllables);
  std::vector<QuotientCandidate> found;
  std::set<std::vector<std::vector<std::size_t>>> tables;
  std::size_t runs = 0;

  auto try_set = [&](const std::vector<Word>& rels) {
    if (++runs > options.budget) {
      throw std::runtime_error("low_index_normal_subgroups: search budget exhausted");
    }
    Presentation p{r, s, rels};
    CosetTable table;
    try {
      table = todd_coxeter(p, std::max<std::size_t>(options.max_index * 8, 64));
    } catch (const EnumerationOverflow&) {
      return;
    }
    if (table.size > options.max_index || table.size < options.min_index) {
      return;
    }
    try {
      (void)tiling_from_quotient(table, r, s);
    } catch (const std::invalid_argument&) {
      return;
    }
    if (tables.insert(table.action).second) {
      found.push_back({rels, table.size});
    }
  };

  for (const auto& w : words) {
    try_set({w});
  }
  if (options.max_relators >= 2) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = i + 1; j < words.size(); ++j) {
        try_set({words[i], words[j]});
      }
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const QuotientCandidate& a, const QuotientCandidate& b) { return a.order < b.order; });
  return found;
}

}  // namespace hypsc::group
