#include "hypsc/dehn.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hypsc::dehn {

namespace {

using gf2::BitMatrix;
using gf2::BitVec;

std::vector<std::uint64_t> key_of(const BitMatrix& m) {
  std::vector<std::uint64_t> key;
  for (const auto& row : m.row_vectors()) {
    key.insert(key.end(), row.words().begin(), row.words().end());
  }
  return key;
}

void require_genus(std::size_t genus) {
  if (genus == 0) {
    throw std::invalid_argument("dehn: genus must be positive");
  }
}

// Column-wise build: column j of the result is cols[j].
BitMatrix from_columns(const std::vector<BitVec>& cols) {
  const std::size_t n = cols.size();
  BitMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i : cols[j].support()) {
      m.set(i, j);
    }
  }
  return m;
}

}  // namespace

SymplecticFrame::SymplecticFrame(std::size_t genus) : genus_(genus), m_(BitMatrix::identity(2 * genus)) {
  require_genus(genus);
}

SymplecticFrame::SymplecticFrame(std::size_t genus, BitMatrix m) : genus_(genus), m_(std::move(m)) {
  require_genus(genus);
  if (m_.rows() != 2 * genus || m_.cols() != 2 * genus) {
    throw std::invalid_argument("SymplecticFrame: matrix must be 2g x 2g");
  }
  if (!is_symplectic()) {
    throw std::invalid_argument("SymplecticFrame: matrix does not preserve the crossing form");
  }
}

bool SymplecticFrame::is_symplectic() const {
  const BitMatrix t = m_.transpose();  // row j = image of D_{j+1}
  for (std::size_t a = 0; a < dim(); ++a) {
    for (std::size_t b = 0; b < dim(); ++b) {
      const bool expected = (a + genus_ == b) || (b + genus_ == a);
      if (crossing(genus_, t.row(a), t.row(b)) != expected) {
        return false;
      }
    }
  }
  return true;
}

bool crossing(std::size_t genus, const BitVec& a, const BitVec& b) {
  bool parity = false;
  for (std::size_t k = 0; k < genus; ++k) {
    parity ^= (a.get(k) && b.get(k + genus)) != (a.get(k + genus) && b.get(k));
  }
  return parity;
}

BitVec loop(std::size_t genus, std::size_t index) {
  if (index < 1 || index > 2 * genus) {
    throw std::out_of_range("loop: index must lie in 1..2g");
  }
  BitVec v(2 * genus);
  v.set(index - 1);
  return v;
}

SymplecticFrame transvection(const SymplecticFrame& frame, const BitVec& gamma) {
  const std::size_t g = frame.genus();
  if (gamma.size() != 2 * g) {
    throw std::invalid_argument("transvection: gamma must be a 2g-vector");
  }
  const BitMatrix t = frame.matrix().transpose();
  std::vector<BitVec> cols;
  for (std::size_t j = 0; j < 2 * g; ++j) {
    BitVec c = t.row(j);
    if (crossing(g, c, gamma)) {
      c ^= gamma;
    }
    cols.push_back(std::move(c));
  }
  return SymplecticFrame(g, from_columns(cols));  // the constructor asserts the form
}

std::vector<Generator> standard_generators(std::size_t genus) {
  require_genus(genus);
  std::vector<Generator> out;
  for (std::size_t i = 1; i <= 2 * genus; ++i) {
    out.push_back({"D" + std::to_string(i), loop(genus, i)});
  }
  for (std::size_t k = 1; k < genus; ++k) {
    out.push_back({"D" + std::to_string(k) + "," + std::to_string(k + 1), loop(genus, k) ^ loop(genus, k + 1)});
  }
  return out;
}

BitVec z_class(std::size_t genus, std::size_t qubit) {
  const std::size_t k = qubit / 2 + 1;  // handle
  return qubit % 2 == 0 ? loop(genus, k + genus) : loop(genus, k);
}

BitVec x_class(std::size_t genus, std::size_t qubit) {
  const std::size_t k = qubit / 2 + 1;
  return qubit % 2 == 0 ? loop(genus, k) : loop(genus, k + genus);
}

SymplecticFrame frame_of_circuit(std::size_t genus, const std::vector<Cnot>& circuit) {
  require_genus(genus);
  const std::size_t nq = 2 * genus;
  // Images of each logical Z-bar and X-bar as qubit sets.
  std::vector<BitVec> zimg;
  std::vector<BitVec> ximg;
  for (std::size_t q = 0; q < nq; ++q) {
    zimg.push_back(BitVec::from_support(nq, std::vector<std::size_t>{q}));
    ximg.push_back(zimg.back());
  }
  for (const auto& [c, t] : circuit) {
    if (c >= nq || t >= nq || c == t) {
      throw std::invalid_argument("frame_of_circuit: bad CNOT qubits");
    }
    for (std::size_t q = 0; q < nq; ++q) {
      if (ximg[q].get(c)) {
        ximg[q].flip(t);
      }
      if (zimg[q].get(t)) {
        zimg[q].flip(c);
      }
    }
  }
  std::vector<BitVec> zcols(nq, BitVec(nq));
  std::vector<BitVec> xcols(nq, BitVec(nq));
  for (std::size_t q = 0; q < nq; ++q) {
    BitVec zc(nq);
    BitVec xc(nq);
    for (std::size_t r : zimg[q].support()) {
      zc ^= z_class(genus, r);
    }
    for (std::size_t r : ximg[q].support()) {
      xc ^= x_class(genus, r);
    }
    zcols[z_class(genus, q).first_set()] = std::move(zc);
    xcols[x_class(genus, q).first_set()] = std::move(xc);
  }
  if (zcols != xcols) {
    throw std::logic_error("frame_of_circuit: X-bar and Z-bar images disagree on homology");
  }
  return SymplecticFrame(genus, from_columns(zcols));
}

std::vector<Cnot> generator_circuit(std::size_t genus, const Generator& gen) {
  const auto support = gen.gamma.support();
  // Qubit q_{2k-1} is index 2k-2, q_{2k} is 2k-1.
  if (support.size() == 1) {
    const std::size_t i = support.front();
    if (i < genus) {
      return {{2 * i + 1, 2 * i}};  // D_k: q_{2k} controls q_{2k-1}
    }
    const std::size_t k = i - genus;
    return {{2 * k, 2 * k + 1}};  // D_{k+g}: q_{2k-1} controls q_{2k}
  }
  if (support.size() == 2 && support[0] + 1 == support[1] && support[1] < genus) {
    const std::size_t a = 2 * support[0];  // q_{2k-1}
    return {{a + 1, a}, {a + 3, a + 2}, {a + 3, a}, {a + 1, a + 2}};
  }
  throw std::invalid_argument("generator_circuit: " + gen.name + " is not a standard generator");
}

SymplecticFrame handle_swap(std::size_t genus, std::size_t k, bool mirrored) {
  if (k < 1 || k + 1 > genus) {
    throw std::invalid_argument("handle_swap: need 1 <= k < g");
  }
  std::vector<BitVec> cols;
  for (std::size_t j = 1; j <= 2 * genus; ++j) {
    std::size_t image = j;
    if (mirrored) {
      if (j == k) {
        image = k + 1 + genus;
      } else if (j == k + 1 + genus) {
        image = k;
      } else if (j == k + genus) {
        image = k + 1;
      } else if (j == k + 1) {
        image = k + genus;
      }
    } else if (j == k || j == k + genus) {
      image = j + 1;
    } else if (j == k + 1 || j == k + 1 + genus) {
      image = j - 1;
    }
    cols.push_back(loop(genus, image));
  }
  return SymplecticFrame(genus, from_columns(cols));
}

SymplecticFrame compose(std::size_t genus, const std::vector<Generator>& gens, const std::vector<std::size_t>& word) {
  SymplecticFrame f(genus);
  for (std::size_t letter : word) {
    f = transvection(f, gens.at(letter).gamma);
  }
  return f;
}

std::optional<std::vector<std::size_t>> shortest_word(const SymplecticFrame& target, const std::vector<Generator>& gens,
                                                      std::size_t max_length) {
  const std::size_t g = target.genus();
  struct Node {
    SymplecticFrame frame;
    std::size_t parent;
    std::size_t letter;
    std::size_t depth;
  };
  std::vector<Node> nodes{{SymplecticFrame(g), 0, 0, 0}};
  std::map<std::vector<std::uint64_t>, std::size_t> seen{{key_of(nodes[0].frame.matrix()), 0}};
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].frame == target) {
      std::vector<std::size_t> word;
      for (std::size_t x = head; x != 0; x = nodes[x].parent) {
        word.push_back(nodes[x].letter);
      }
      std::reverse(word.begin(), word.end());
      return word;
    }
    if (nodes[head].depth == max_length) {
      continue;
    }
    for (std::size_t l = 0; l < gens.size(); ++l) {
      SymplecticFrame next = transvection(nodes[head].frame, gens[l].gamma);
      auto key = key_of(next.matrix());
      if (seen.emplace(std::move(key), nodes.size()).second) {
        nodes.push_back({std::move(next), head, l, nodes[head].depth + 1});
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<std::size_t>> word_of_length(const SymplecticFrame& target,
                                                       const std::vector<Generator>& gens, std::size_t length) {
  const std::size_t g = target.genus();
  // layers[t] maps each frame reachable in exactly t letters to (previous key, letter).
  using Key = std::vector<std::uint64_t>;
  struct Back {
    Key previous;
    std::size_t letter;
  };
  std::vector<std::map<Key, std::pair<SymplecticFrame, Back>>> layers(length + 1);
  const SymplecticFrame id(g);
  layers[0].emplace(key_of(id.matrix()), std::make_pair(id, Back{}));
  for (std::size_t t = 1; t <= length; ++t) {
    for (const auto& [key, entry] : layers[t - 1]) {
      for (std::size_t l = 0; l < gens.size(); ++l) {
        SymplecticFrame next = transvection(entry.first, gens[l].gamma);
        auto nkey = key_of(next.matrix());
        layers[t].try_emplace(std::move(nkey), std::move(next), Back{key, l});
      }
    }
  }
  auto it = layers[length].find(key_of(target.matrix()));
  if (it == layers[length].end()) {
    return std::nullopt;
  }
  std::vector<std::size_t> word;
  Key key = it->first;
  for (std::size_t t = length; t > 0; --t) {
    const Back& b = layers[t].at(key).second;
    word.push_back(b.letter);
    key = b.previous;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::vector<Generator> handle_pair_generators(std::size_t genus, std::size_t k) {
  if (k < 1 || k + 1 > genus) {
    throw std::invalid_argument("handle_pair_generators: need 1 <= k < g");
  }
  const auto all = standard_generators(genus);
  return {all[k - 1], all[k - 1 + genus], all[k], all[k + genus], all[2 * genus + k - 1]};
}

std::vector<Generator> enlarged_handle_pair_generators(std::size_t genus, std::size_t k) {
  auto gens = handle_pair_generators(genus, k);
  const std::string dk = "D" + std::to_string(k);
  gens.push_back({dk + "+D" + std::to_string(k + genus), loop(genus, k) ^ loop(genus, k + genus)});
  gens.push_back({dk + "+D" + std::to_string(k + 1 + genus), loop(genus, k) ^ loop(genus, k + 1 + genus)});
  return gens;
}

std::string SwapWord::to_string() const {
  std::string out;
  for (std::size_t l : word) {
    if (!out.empty()) {
      out += ' ';
    }
    out += generators.at(l).name;
  }
  return out;
}

SwapWord swap_via_twists(std::size_t genus, std::size_t k) {
  SwapWord out;
  out.generators = handle_pair_generators(genus, k);
  const SymplecticFrame target = handle_swap(genus, k);
  auto word = word_of_length(target, out.generators, 9);
  if (!word) {
    throw std::logic_error("swap_via_twists: no 9-twist word found");
  }
  out.word = std::move(*word);
  out.verified = compose(genus, out.generators, out.word) == target;
  if (!out.verified) {
    throw std::logic_error("swap_via_twists: composed frame is not the handle swap");
  }
  return out;
}

std::optional<SwapWord> short_swap_search(std::size_t genus, std::size_t k, std::size_t max_length) {
  SwapWord out;
  out.generators = enlarged_handle_pair_generators(genus, k);
  const SymplecticFrame target = handle_swap(genus, k);
  auto word = shortest_word(target, out.generators, max_length);
  if (!word) {
    return std::nullopt;
  }
  out.word = std::move(*word);
  out.verified = compose(genus, out.generators, out.word) == target;
  return out;
}

std::size_t PauliFrame::add(BitVec x, BitVec z) {
  if (x.size() != n_ || z.size() != n_) {
    throw std::invalid_argument("PauliFrame::add: operator has the wrong length");
  }
  x_.push_back(std::move(x));
  z_.push_back(std::move(z));
  return x_.size() - 1;
}

void PauliFrame::cnot(std::size_t control, std::size_t target) {
  if (control >= n_ || target >= n_ || control == target) {
    throw std::invalid_argument("PauliFrame::cnot: bad qubits");
  }
  for (std::size_t r = 0; r < x_.size(); ++r) {
    if (x_[r].get(control)) {
      x_[r].flip(target);
    }
    if (z_[r].get(target)) {
      z_[r].flip(control);
    }
  }
}

std::size_t PauliFrame::weight(std::size_t row) const {
  std::size_t w = 0;
  for (std::size_t q = 0; q < n_; ++q) {
    w += x_[row].get(q) || z_[row].get(q);
  }
  return w;
}

namespace {

// Edges around a vertex in rotation order; wedge_face[i] is the face between rot[i] and rot[i+1].
struct Rotation {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> wedge_face;
};

Rotation rotation_at(const TiledSurface& s, std::size_t v) {
  struct Wedge {
    std::size_t face;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Wedge> wedges;
  for (std::size_t f = 0; f < s.face_count(); ++f) {
    const auto& face = s.face(f);
    const auto& corners = s.face_corners(f);
    for (std::size_t i = 0; i < face.size(); ++i) {
      if (corners[i] == v) {
        wedges.push_back({f, face[(i + face.size() - 1) % face.size()], face[i]});
      }
    }
  }
  Rotation rot;
  if (wedges.empty()) {
    return rot;
  }
  std::vector<bool> used(wedges.size(), false);
  std::size_t cur = wedges.front().a;
  for (std::size_t step = 0; step < wedges.size(); ++step) {
    std::size_t pick = wedges.size();
    for (std::size_t w = 0; w < wedges.size() && pick == wedges.size(); ++w) {
      if (!used[w] && (wedges[w].a == cur || wedges[w].b == cur)) {
        pick = w;
      }
    }
    if (pick == wedges.size()) {
      throw std::invalid_argument("twist_schedule: vertex " + std::to_string(v) + " has no disc neighbourhood");
    }
    used[pick] = true;
    rot.edges.push_back(cur);
    rot.wedge_face.push_back(wedges[pick].face);
    cur = wedges[pick].a == cur ? wedges[pick].b : wedges[pick].a;
  }
  if (cur != rot.edges.front()) {
    throw std::invalid_argument("twist_schedule: rotation at vertex " + std::to_string(v) + " does not close");
  }
  return rot;
}

std::size_t position(const std::vector<std::size_t>& xs, std::size_t x) {
  const auto it = std::find(xs.begin(), xs.end(), x);
  if (it == xs.end() || std::find(it + 1, xs.end(), x) != xs.end()) {
    throw std::invalid_argument("twist_schedule: loop edge does not appear exactly once around its vertex");
  }
  return static_cast<std::size_t>(it - xs.begin());
}

}  // namespace

TwistSchedule twist_schedule(const TiledSurface& s, const BitVec& loop_edges) {
  if (loop_edges.size() != s.edge_count()) {
    throw std::invalid_argument("twist_schedule: loop vector has the wrong length");
  }
  const auto support = loop_edges.support();
  if (support.size() < 3) {
    throw std::invalid_argument("twist_schedule: loop must have at least three edges");
  }
  // Order the loop as a simple cycle.
  std::vector<std::vector<std::size_t>> at(s.vertex_count());
  for (std::size_t e : support) {
    at[s.edge(e).u].push_back(e);
    at[s.edge(e).v].push_back(e);
  }
  for (const auto& es : at) {
    if (!es.empty() && es.size() != 2) {
      throw std::invalid_argument("twist_schedule: loop is not a simple cycle");
    }
  }
  TwistSchedule sch;
  std::size_t e = support.front();
  std::size_t v = s.edge(e).u;
  do {
    sch.loop_vertices.push_back(v);
    sch.loop_edges.push_back(e);
    v = s.edge(e).u == v ? s.edge(e).v : s.edge(e).u;
    e = at[v][0] == e ? at[v][1] : at[v][0];
  } while (e != support.front());
  const std::size_t d = sch.loop_edges.size();
  if (d != support.size()) {
    throw std::invalid_argument("twist_schedule: loop is not connected");
  }
  // Walk along the loop carrying one side across each edge through the face it borders.
  // Around v_j the rotation splits into arc P (from e_{j-1} forward to e_j) and arc Q.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t carried = kNone;
  sch.side_edges.resize(d);
  for (std::size_t j = 0; j <= d; ++j) {
    const std::size_t jj = j % d;
    const Rotation rot = rotation_at(s, sch.loop_vertices[jj]);
    const std::size_t deg = rot.edges.size();
    const std::size_t a = position(rot.edges, sch.loop_edges[(jj + d - 1) % d]);
    const std::size_t b = position(rot.edges, sch.loop_edges[jj]);
    bool p = true;
    if (j > 0) {
      const std::size_t fp = rot.wedge_face[a];
      const std::size_t fq = rot.wedge_face[(a + deg - 1) % deg];
      if (fp == fq) {
        throw std::invalid_argument("twist_schedule: a loop edge borders the same face on both sides");
      }
      if (carried == fp) {
        p = true;
      } else if (carried == fq) {
        p = false;
      } else {
        throw std::logic_error("twist_schedule: side face lost between loop vertices");
      }
    }
    if (j == d) {
      if (!p) {
        throw std::invalid_argument("twist_schedule: loop is one-sided; side edges cannot be oriented");
      }
      break;
    }
    for (std::size_t i = (p ? a : b) + 1;; ++i) {
      const std::size_t idx = i % deg;
      if (idx == (p ? b : a)) {
        break;
      }
      sch.side_edges[jj].push_back(rot.edges[idx]);
    }
    const std::size_t fp = rot.wedge_face[(b + deg - 1) % deg];
    const std::size_t fq = rot.wedge_face[b];
    if (fp == fq) {
      throw std::invalid_argument("twist_schedule: a loop edge borders the same face on both sides");
    }
    carried = p ? fp : fq;
  }
  // The side edges must cut every face evenly: they carry the partner X-bar.
  BitVec side(s.edge_count());
  for (const auto& es : sch.side_edges) {
    for (std::size_t x : es) {
      if (side.get(x)) {
        throw std::invalid_argument("twist_schedule: an edge sticks out of the loop twice");
      }
      side.set(x);
    }
  }
  for (std::size_t f = 0; f < s.face_count(); ++f) {
    std::size_t count = 0;
    for (std::size_t x : s.face(f)) {
      count += side.get(x);
    }
    if (count % 2 != 0) {
      throw std::logic_error("twist_schedule: side edges are not a cocycle");
    }
  }
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<Cnot> layer;
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t t : sch.side_edges[(j + k) % d]) {
        layer.push_back({sch.loop_edges[j], t});
      }
    }
    sch.layers.push_back(std::move(layer));
  }
  return sch;
}

TwistReport circuit_twist(const TiledSurface& s, const CssCode& code, const BitVec& loop_edges,
                          std::size_t repetitions) {
  if (code.n != s.edge_count()) {
    throw std::invalid_argument("circuit_twist: code does not match the surface");
  }
  if (code.h_x.multiply(loop_edges).any()) {
    throw std::invalid_argument("circuit_twist: loop is not a Z cycle");
  }
  bool nontrivial = false;
  for (const auto& pair : code.logical_pairs) {
    nontrivial = nontrivial || loop_edges.dot(pair.x);
  }
  if (!nontrivial) {
    throw std::invalid_argument("circuit_twist: loop is homologically trivial");
  }
  TwistReport rep;
  rep.schedule = twist_schedule(s, loop_edges);
  rep.repetitions = repetitions;

  const std::size_t n = code.n;
  const std::size_t k = code.logical_pairs.size();
  PauliFrame frame(n);
  const BitVec zero(n);
  const std::size_t vx = code.h_x.rows();
  const std::size_t fz = code.h_z.rows();
  for (std::size_t r = 0; r < vx; ++r) {
    frame.add(code.h_x.row(r), zero);
  }
  for (std::size_t r = 0; r < fz; ++r) {
    frame.add(zero, code.h_z.row(r));
  }
  const std::size_t checks = vx + fz;
  for (const auto& pair : code.logical_pairs) {
    frame.add(pair.x, zero);
  }
  for (const auto& pair : code.logical_pairs) {
    frame.add(zero, pair.z);
  }

  rep.x_weight_min = n;
  rep.x_weight_max = 0;
  for (std::size_t rnd = 0; rnd < repetitions; ++rnd) {
    for (const auto& layer : rep.schedule.layers) {
      for (const auto& [c, t] : layer) {
        frame.cnot(c, t);
      }
      for (std::size_t a = 0; a < frame.size() && rep.commuting; ++a) {
        for (std::size_t b = a + 1; b < checks; ++b) {
          if (!frame.commute(a, b)) {
            rep.commuting = false;
            break;
          }
        }
      }
      for (std::size_t r = 0; r < vx; ++r) {
        const std::size_t w = frame.weight(r);
        rep.x_weight_min = std::min(rep.x_weight_min, w);
        rep.x_weight_max = std::max(rep.x_weight_max, w);
      }
    }
  }

  // Stabilizer group: same row space of (x | z) over both check types.
  auto stacked = [n](const BitVec& x, const BitVec& z) {
    BitVec v(2 * n);
    for (std::size_t q : x.support()) {
      v.set(q);
    }
    for (std::size_t q : z.support()) {
      v.set(n + q);
    }
    return v;
  };
  gf2::EchelonBasis original(2 * n);
  for (std::size_t r = 0; r < vx; ++r) {
    original.insert(stacked(code.h_x.row(r), zero));
  }
  for (std::size_t r = 0; r < fz; ++r) {
    original.insert(stacked(zero, code.h_z.row(r)));
  }
  gf2::EchelonBasis tracked(2 * n);
  bool inside = true;
  for (std::size_t r = 0; r < checks; ++r) {
    const BitVec v = stacked(frame.x(r), frame.z(r));
    inside = inside && original.contains(v);
    tracked.insert(v);
  }
  rep.stabilizers_preserved = inside && tracked.rank() == original.rank();

  // Logical action in the code's own (X-bar | Z-bar) coordinates, modulo stabilizers.
  rep.measured = BitMatrix(2 * k, 2 * k);
  bool reducible = true;
  for (std::size_t i = 0; i < 2 * k; ++i) {
    const std::size_t row = checks + i;
    BitVec residual = stacked(frame.x(row), frame.z(row));
    for (std::size_t j = 0; j < k; ++j) {
      if (frame.x(row).dot(code.logical_pairs[j].z)) {
        rep.measured.set(j, i);
        residual ^= stacked(code.logical_pairs[j].x, zero);
      }
      if (frame.z(row).dot(code.logical_pairs[j].x)) {
        rep.measured.set(k + j, i);
        residual ^= stacked(zero, code.logical_pairs[j].z);
      }
    }
    reducible = reducible && original.contains(residual);
  }

  // Transvection along the loop class: dual loops crossing it pick up the partner X-bar
  // on the side edges, primal loops crossing the side pick up the loop itself.
  BitVec side(n);
  for (const auto& es : rep.schedule.side_edges) {
    for (std::size_t x : es) {
      side.set(x);
    }
  }
  BitMatrix once = BitMatrix::identity(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    if (loop_edges.dot(code.logical_pairs[i].x)) {
      for (std::size_t j = 0; j < k; ++j) {
        if (side.dot(code.logical_pairs[j].z)) {
          once.flip(j, i);
        }
      }
    }
    if (side.dot(code.logical_pairs[i].z)) {
      for (std::size_t j = 0; j < k; ++j) {
        if (loop_edges.dot(code.logical_pairs[j].x)) {
          once.flip(k + j, k + i);
        }
      }
    }
  }
  rep.predicted = BitMatrix::identity(2 * k);
  for (std::size_t r = 0; r < repetitions; ++r) {
    rep.predicted = once * rep.predicted;
  }
  rep.logical_matches = reducible && rep.measured == rep.predicted;
  return rep;
}

}  // namespace hypsc::dehn
