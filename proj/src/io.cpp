#include "hypsc/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hypsc::io {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
}

std::string surface_to_json(const TiledSurface& s) {
  json j;
  j["name"] = s.name();
  j["vertex_count"] = s.vertex_count();
  json edges = json::array();
  for (const auto& e : s.edges()) {
    edges.push_back({e.u, e.v});
  }
  j["edges"] = std::move(edges);
  j["faces"] = s.faces();
  return j.dump() + "\n";
}

TiledSurface surface_from_json(const std::string& text) {
  const json j = parse(text, "code file");
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) {
        throw std::invalid_argument("code file: edge entries must be [u, v]");
      }
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
    }
    return TiledSurface(j.value("name", std::string{}), j.at("vertex_count").get<std::size_t>(), std::move(edges),
                        j.at("faces").get<std::vector<std::vector<std::size_t>>>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("code file: ") + e.what());
  }
}

void save_surface(const TiledSurface& s, const std::filesystem::path& path) { write_file(path, surface_to_json(s)); }

TiledSurface load_surface(const std::filesystem::path& path) { return surface_from_json(read_file(path)); }

QuotientFixture fixture_from_json(const std::string& text) {
  const json j = parse(text, "fixture");
  try {
    QuotientFixture f;
    f.name = j.at("name").get<std::string>();
    f.r = j.at("r").get<int>();
    f.s = j.at("s").get<int>();
    f.relator_words = j.at("relator_words").get<std::vector<std::string>>();
    return f;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("fixture: ") + e.what());
  }
}

bool is_fixture_json(const std::string& text) {
  const json j = parse(text, "json file");
  return j.is_object() && j.contains("relator_words");
}

std::string fixture_to_json(const QuotientFixture& f) {
  json j;
  j["name"] = f.name;
  j["r"] = f.r;
  j["s"] = f.s;
  j["relator_words"] = f.relator_words;
  return j.dump(2) + "\n";
}

QuotientFixture load_fixture(const std::filesystem::path& path) { return fixture_from_json(read_file(path)); }

std::filesystem::path sidecar_path(const std::filesystem::path& code_file) {
  auto p = code_file;
  p.replace_extension(".distance.json");
  return p;
}

std::string distance_to_json(const DistanceRecord& r) {
  json j;
  j["d_z"] = r.d_z;
  j["d_x"] = r.d_x;
  if (r.n_d_z) {
    j["n_d_z"] = *r.n_d_z;
  }
  if (r.n_d_x) {
    j["n_d_x"] = *r.n_d_x;
  }
  return j.dump() + "\n";
}

DistanceRecord distance_from_json(const std::string& text) {
  const json j = parse(text, "distance record");
  DistanceRecord r;
  r.d_z = j.at("d_z").get<std::size_t>();
  r.d_x = j.at("d_x").get<std::size_t>();
  if (j.contains("n_d_z")) {
    r.n_d_z = j["n_d_z"].get<std::size_t>();
  }
  if (j.contains("n_d_x")) {
    r.n_d_x = j["n_d_x"].get<std::size_t>();
  }
  return r;
}

std::optional<DistanceRecord> load_sidecar(const std::filesystem::path& code_file) {
  const auto path = sidecar_path(code_file);
  if (!std::filesystem::exists(path)) {
    return std::nullopt;
  }
  return distance_from_json(read_file(path));
}

void save_sidecar(const std::filesystem::path& code_file, const DistanceRecord& r) {
  write_file(sidecar_path(code_file), distance_to_json(r));
}

}  // namespace hypsc::io
