#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hypsc/builders.hpp"
#include "hypsc/surface.hpp"

namespace hypsc::io {

/// {"name", "vertex_count", "edges": [[u,v],...], "faces": [[e,...],...]}, keys in that order.
std::string surface_to_json(const TiledSurface& s);
TiledSurface surface_from_json(const std::string& text);

void save_surface(const TiledSurface& s, const std::filesystem::path& path);
TiledSurface load_surface(const std::filesystem::path& path);

QuotientFixture fixture_from_json(const std::string& text);
/// True when the JSON object carries "relator_words" (a fixture, not a code file).
bool is_fixture_json(const std::string& text);
std::string fixture_to_json(const QuotientFixture& f);
QuotientFixture load_fixture(const std::filesystem::path& path);

/// Cached distance results stored next to a code file as <stem>.distance.json.
struct DistanceRecord {
  std::size_t d_z = 0;
  std::size_t d_x = 0;
  std::optional<std::size_t> n_d_z;
  std::optional<std::size_t> n_d_x;
};

std::filesystem::path sidecar_path(const std::filesystem::path& code_file);
std::string distance_to_json(const DistanceRecord& r);
DistanceRecord distance_from_json(const std::string& text);
std::optional<DistanceRecord> load_sidecar(const std::filesystem::path& code_file);
void save_sidecar(const std::filesystem::path& code_file, const DistanceRecord& r);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hypsc::io
