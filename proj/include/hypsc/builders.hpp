#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hypsc/group.hpp"
#include "hypsc/surface.hpp"

namespace hypsc {

/// L x L periodic square grid: L^2 vertices, 2L^2 edges, L^2 faces. L = 2 gives parallel edges.
TiledSurface toric(std::size_t L);

/// Square grid rotated by 45 degrees: L^2 qubits, L^2/2 X-checks and L^2/2 Z-checks.
/// Requires L even and L >= 4.
TiledSurface rotated_toric(std::size_t L);

/// Replaces every square face by an l x l grid. Edge-interior nodes are shared by the two
/// faces on that edge, so the result is again closed with the same Euler characteristic.
TiledSurface semi_hyperbolic(const TiledSurface& s, std::size_t l);

/// Subgroup data for a {r,s} quotient surface.
struct QuotientFixture {
  std::string name;
  int r = 0;
  int s = 0;
  std::vector<std::string> relator_words;
};

TiledSurface from_fixture(const QuotientFixture& fixture);

/// Expected parameters of a shipped catalog entry.
struct CatalogEntry {
  std::string name;
  int r;
  int s;
  std::size_t n;
  std::size_t k;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Directory holding the shipped fixtures; HYPSC_CATALOG overrides the build-time default.
std::string catalog_dir();

/// Resolves `id` as a catalog name (e.g. "hyp45-60") or a fixture file path, enumerates the
/// quotient and checks (n, k) against the catalog when the name is known.
TiledSurface hyperbolic(const std::string& id);

/// Any code reference accepted by the tools: a code or fixture JSON file, a catalog name,
/// "toric-L", "rotated-toric-L", or "<catalog name>-lK" for the l = K subdivision.
TiledSurface resolve_surface(const std::string& spec);

}  // namespace hypsc
