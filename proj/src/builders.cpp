#include "hypsc/builders.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "hypsc/io.hpp"

#ifndef HYPSC_CATALOG_DIR
#define HYPSC_CATALOG_DIR "data/catalog"
#endif

namespace hypsc {

TiledSurface toric(std::size_t L) {
  if (L < 2) {
    throw std::invalid_argument("toric: L must be at least 2");
  }
  auto vid = [L](std::size_t x, std::size_t y) { return (y % L) * L + (x % L); };
  // h(x,y) = 2 vid(x,y), v(x,y) = 2 vid(x,y) + 1
  std::vector<Edge> edges(2 * L * L);
  for (std::size_t y = 0; y < L; ++y) {
    for (std::size_t x = 0; x < L; ++x) {
      edges[2 * vid(x, y)] = {vid(x, y), vid(x + 1, y)};
      edges[2 * vid(x, y) + 1] = {vid(x, y), vid(x, y + 1)};
    }
  }
  std::vector<std::vector<std::size_t>> faces;
  faces.reserve(L * L);
  for (std::size_t y = 0; y < L; ++y) {
    for (std::size_t x = 0; x < L; ++x) {
      faces.push_back({2 * vid(x, y), 2 * vid(x + 1, y) + 1, 2 * vid(x, y + 1), 2 * vid(x, y) + 1});
    }
  }
  return TiledSurface("toric-" + std::to_string(L), L * L, std::move(edges), std::move(faces));
}

TiledSurface rotated_toric(std::size_t L) {
  if (L < 4 || L % 2 != 0) {
    throw std::invalid_argument("rotated_toric: L must be even and at least 4");
  }
  // Qubits sit on grid points (i,j); plaquette (a,b) spans (a,b)..(a+1,b+1). Plaquettes with
  // a+b even are X-checks (vertices), the others Z-checks (faces).
  const std::size_t half = L / 2;
  auto wrap = [L](std::size_t a) { return a % L; };
  auto plaquette = [&](std::size_t a, std::size_t b) { return wrap(a) * half + wrap(b) / 2; };
  auto qubit = [&](std::size_t i, std::size_t j) { return wrap(i) * L + wrap(j); };

  std::vector<Edge> edges(L * L);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      // The qubit lies on plaquettes (i,j), (i-1,j-1) [one colour] and (i-1,j), (i,j-1).
      if ((i + j) % 2 == 0) {
        edges[qubit(i, j)] = {plaquette(i, j), plaquette(i + L - 1, j + L - 1)};
      } else {
        edges[qubit(i, j)] = {plaquette(i + L - 1, j), plaquette(i, j + L - 1)};
      }
    }
  }
  std::vector<std::vector<std::size_t>> faces(L * L / 2);
  for (std::size_t a = 0; a < L; ++a) {
    for (std::size_t b = 0; b < L; ++b) {
      if ((a + b) % 2 == 1) {
        faces[plaquette(a, b)] = {qubit(a, b), qubit(a + 1, b), qubit(a + 1, b + 1), qubit(a, b + 1)};
      }
    }
  }
  return TiledSurface("rotated-toric-" + std::to_string(L), L * L / 2, std::move(edges), std::move(faces));
}

TiledSurface semi_hyperbolic(const TiledSurface& s, std::size_t l) {
  if (l < 1) {
    throw std::invalid_argument("semi_hyperbolic: l must be at least 1");
  }
  for (std::size_t f = 0; f < s.face_count(); ++f) {
    if (s.face(f).size() != 4) {
      throw std::invalid_argument("semi_hyperbolic: face " + std::to_string(f) + " is not a square");
    }
  }
  const std::size_t nv = s.vertex_count();
  const std::size_t ne = s.edge_count();
  const std::size_t nf = s.face_count();
  const std::size_t m = l - 1;
  const std::size_t edge_node_base = nv;
  const std::size_t face_node_base = nv + ne * m;
  const std::size_t face_edge_base = ne * l;
  const std::size_t per_face_edges = 2 * l * m;

  std::vector<Edge> edges(ne * l * l);
  // Subdivided original edges: segment t joins positions t and t+1 counted from u.
  auto edge_node = [&](std::size_t e, std::size_t t) -> std::size_t {
    if (t == 0) {
      return s.edge(e).u;
    }
    if (t == l) {
      return s.edge(e).v;
    }
    return edge_node_base + e * m + (t - 1);
  };
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t t = 0; t < l; ++t) {
      edges[e * l + t] = {edge_node(e, t), edge_node(e, t + 1)};
    }
  }

  std::vector<std::vector<std::size_t>> faces;
  faces.reserve(nf * l * l);
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& fe = s.face(f);
    const auto& w = s.face_corners(f);
    bool forward[4];
    for (int i = 0; i < 4; ++i) {
      forward[i] = s.edge(fe[i]).u == w[i];
    }
    // Side i walks from corner w_i to w_{i+1}; position t along it is measured from w_i.
    auto side_pos = [&](int i, std::size_t t) { return forward[i] ? t : l - t; };
    auto side_segment = [&](int i, std::size_t t) {
      return fe[i] * l + (forward[i] ? t : l - 1 - t);
    };
    // Grid corners: w0=(0,0), w1=(l,0), w2=(l,l), w3=(0,l).
    auto node = [&](std::size_t x, std::size_t y) -> std::size_t {
      if (y == 0) {
        return edge_node(fe[0], side_pos(0, x));
      }
      if (x == l) {
        return edge_node(fe[1], side_pos(1, y));
      }
      if (y == l) {
        return edge_node(fe[2], side_pos(2, l - x));
      }
      if (x == 0) {
        return edge_node(fe[3], side_pos(3, l - y));
      }
      return face_node_base + f * m * m + (y - 1) * m + (x - 1);
    };
    const std::size_t base = face_edge_base + f * per_face_edges;
    // (x,y)-(x+1,y)
    auto horizontal = [&](std::size_t x, std::size_t y) -> std::size_t {
      if (y == 0) {
        return side_segment(0, x);
      }
      if (y == l) {
        return side_segment(2, l - 1 - x);
      }
      return base + (y - 1) * l + x;
    };
    // (x,y)-(x,y+1)
    auto vertical = [&](std::size_t x, std::size_t y) -> std::size_t {
      if (x == l) {
        return side_segment(1, y);
      }
      if (x == 0) {
        return side_segment(3, l - 1 - y);
      }
      return base + l * m + (x - 1) * l + y;
    };
    for (std::size_t y = 1; y < l; ++y) {
      for (std::size_t x = 0; x < l; ++x) {
        edges[horizontal(x, y)] = {node(x, y), node(x + 1, y)};
      }
    }
    for (std::size_t x = 1; x < l; ++x) {
      for (std::size_t y = 0; y < l; ++y) {
        edges[vertical(x, y)] = {node(x, y), node(x, y + 1)};
      }
    }
    for (std::size_t y = 0; y < l; ++y) {
      for (std::size_t x = 0; x < l; ++x) {
        faces.push_back({horizontal(x, y), vertical(x + 1, y), horizontal(x, y + 1), vertical(x, y)});
      }
    }
  }
  std::string name = s.name().empty() ? "semi-hyperbolic" : s.name();
  if (l > 1) {
    name += "-l" + std::to_string(l);
  }
  // The constructor re-validates the two-faces-per-edge invariant.
  return TiledSurface(std::move(name), face_node_base + nf * m * m, std::move(edges), std::move(faces));
}

TiledSurface from_fixture(const QuotientFixture& fixture) {
  group::Presentation p{fixture.r, fixture.s, {}};
  for (const auto& w : fixture.relator_words) {
    p.extra_relators.push_back(group::parse_word(w));
  }
  const auto table = group::todd_coxeter(p, 1'000'000);
  return group::tiling_from_quotient(table, fixture.r, fixture.s, fixture.name);
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"hyp45-60", 4, 5, 60, 8},
      {"hyp45-160", 4, 5, 160, 18},
      {"hyp45-360", 4, 5, 360, 38},
      {"klein-quartic", 3, 7, 84, 6},
      {"small-stellated-dodecahedron", 5, 5, 30, 8},
  };
  return entries;
}

std::string catalog_dir() {
  if (const char* env = std::getenv("HYPSC_CATALOG"); env != nullptr && *env != '\0') {
    return env;
  }
  return HYPSC_CATALOG_DIR;
}

TiledSurface hyperbolic(const std::string& id) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog_entries()) {
    if (e.name == id) {
      entry = &e;
    }
  }
  // Known names and other shipped fixtures resolve inside the catalog; anything else is a path.
  const std::filesystem::path shipped = std::filesystem::path(catalog_dir()) / (id + ".json");
  const bool use_catalog = entry != nullptr || (!std::filesystem::exists(id) && std::filesystem::exists(shipped));
  const std::filesystem::path path = use_catalog ? shipped : std::filesystem::path(id);
  const QuotientFixture fixture = io::load_fixture(path);
  if (entry == nullptr) {
    for (const auto& e : catalog_entries()) {
      if (e.name == fixture.name) {
        entry = &e;
      }
    }
  }
  TiledSurface surface = from_fixture(fixture);
  if (entry != nullptr) {
    if (fixture.r != entry->r || fixture.s != entry->s) {
      throw std::runtime_error("hyperbolic: fixture " + fixture.name + " has the wrong Schlafli symbol");
    }
    const std::size_t k = euler_genus(surface).k;
    if (surface.edge_count() != entry->n || k != entry->k) {
      throw std::runtime_error("hyperbolic: fixture " + fixture.name + " gives [[" +
                               std::to_string(surface.edge_count()) + "," + std::to_string(k) +
                               "]], expected [[" + std::to_string(entry->n) + "," + std::to_string(entry->k) +
                               "]]");
    }
  }
  return surface;
}

namespace {

std::optional<std::size_t> parse_size(const std::string& text) {
  const auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (text.empty() || text.size() > 9 || !std::all_of(text.begin(), text.end(), digit)) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(std::stoul(text));
}

bool is_catalog_name(const std::string& name) {
  return std::any_of(catalog_entries().begin(), catalog_entries().end(),
                     [&](const CatalogEntry& e) { return e.name == name; });
}

}  // namespace

TiledSurface resolve_surface(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) {
    const std::string text = io::read_file(spec);
    return io::is_fixture_json(text) ? hyperbolic(spec) : io::surface_from_json(text);
  }
  for (const std::string prefix : {"rotated-toric-", "toric-"}) {
    if (spec.rfind(prefix, 0) == 0) {
      if (const auto L = parse_size(spec.substr(prefix.size()))) {
        return prefix == "toric-" ? toric(*L) : rotated_toric(*L);
      }
    }
  }
  if (is_catalog_name(spec)) {
    return hyperbolic(spec);
  }
  if (const auto pos = spec.rfind("-l"); pos != std::string::npos && is_catalog_name(spec.substr(0, pos))) {
    if (const auto l = parse_size(spec.substr(pos + 2)); l && *l >= 1) {
      return semi_hyperbolic(hyperbolic(spec.substr(0, pos)), *l);
    }
  }
  throw std::invalid_argument("unknown code '" + spec +
                              "': expected a JSON file, a catalog name, toric-L, rotated-toric-L or <catalog>-lK");
}

}  // namespace hypsc
