// hypsc: build surface codes, compute distances, run decoding experiments, check Dehn twists.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypsc/builders.hpp"
#include "hypsc/dehn.hpp"
#include "hypsc/distance.hpp"
#include "hypsc/experiments.hpp"
#include "hypsc/io.hpp"
#include "hypsc/surface.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace hypsc;

struct LoadedCode {
  std::string spec;
  TiledSurface surface;
  CssCode code;
  // Set only for plain code files, which get a distance sidecar.
  std::optional<std::filesystem::path> file;
};

LoadedCode load_code(const std::string& spec) {
  LoadedCode out{spec, resolve_surface(spec), {}, std::nullopt};
  out.code = derive_code(out.surface);
  if (std::filesystem::is_regular_file(spec) && !io::is_fixture_json(io::read_file(spec))) {
    out.file = spec;
    if (const auto cached = io::load_sidecar(spec)) {
      out.code.d_z = cached->d_z;
      out.code.d_x = cached->d_x;
    }
  }
  return out;
}

// Distance record with the requested counts, reusing and refreshing the sidecar.
io::DistanceRecord distances(LoadedCode& c, bool need_counts, std::size_t path_cap) {
  std::optional<io::DistanceRecord> cached;
  if (c.file) {
    cached = io::load_sidecar(*c.file);
  }
  if (cached && (!need_counts || (cached->n_d_z && cached->n_d_x))) {
    return *cached;
  }
  io::DistanceRecord r;
  if (need_counts) {
    const DistanceOptions opts{path_cap};
    const auto [dz, nz] = count_min_weight(c.code, Side::Z, opts);
    const auto [dx, nx] = count_min_weight(c.code, Side::X, opts);
    r = {dz, dx, nz, nx};
  } else {
    r.d_z = min_weight_logical(c.code, Side::Z);
    r.d_x = min_weight_logical(c.code, Side::X);
  }
  c.code.d_z = r.d_z;
  c.code.d_x = r.d_x;
  if (c.file) {
    io::save_sidecar(*c.file, r);
  }
  return r;
}

std::size_t ensure_d_z(LoadedCode& c) {
  if (!c.code.d_z) {
    distances(c, false, DistanceOptions{}.path_cap);
  }
  return *c.code.d_z;
}

std::uint64_t pick_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) {
    return *seed;
  }
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "seed: " << s << " (auto-chosen; pass --seed " << s << " to reproduce)\n";
  return s;
}

struct Channels {
  std::string value = "both";
  void apply(SampleOptions& o) const {
    if (value != "both" && value != "z" && value != "x") {
      throw std::invalid_argument("--channels must be both, z or x");
    }
    o.z_errors = value != "x";
    o.x_errors = value != "z";
  }
};

// "equal" -> nullopt (q follows p).
std::optional<double> parse_q(const std::string& q) {
  if (q == "equal") {
    return std::nullopt;
  }
  return std::stod(q);
}

// "auto" -> 0 (resolved per code).
std::size_t parse_rounds(const std::string& rounds) {
  if (rounds == "auto") {
    return 0;
  }
  const long v = std::stol(rounds);
  if (v < 1) {
    throw std::invalid_argument("--rounds must be auto or a positive integer");
  }
  return static_cast<std::size_t>(v);
}

// T = d_Z for auto with noisy checks; a single round when checks are perfect.
std::size_t resolve_rounds(std::size_t rounds, double q, bool q_equal, LoadedCode& c) {
  if (rounds != 0) {
    return rounds;
  }
  return (q_equal || q > 0.0) ? ensure_d_z(c) : 1;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

json read_config(const std::string& path) {
  try {
    return json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
}

int cmd_build(const std::string& family, std::size_t param, const std::string& base, const std::string& out) {
  TiledSurface s;
  if (family == "toric") {
    s = toric(param);
  } else if (family == "rotated-toric") {
    s = rotated_toric(param);
  } else if (family == "hyperbolic-45") {
    s = resolve_surface(base.empty() ? "hyp45-" + std::to_string(param) : base);
  } else if (family == "semi-hyperbolic") {
    if (base.empty()) {
      throw std::invalid_argument("build: semi-hyperbolic needs --base");
    }
    s = semi_hyperbolic(resolve_surface(base), param);
  } else {
    throw std::invalid_argument("build: unknown family '" + family + "'");
  }
  io::save_surface(s, out);
  const Topology t = euler_genus(s);
  std::cout << s.name() << ": n=" << s.edge_count() << " k=" << t.k << " |V|=" << s.vertex_count()
            << " |F|=" << s.face_count() << " -> " << out << "\n";
  return 0;
}

int cmd_distance(const std::string& spec, bool count, const std::string& side, std::size_t path_cap) {
  if (side != "both" && side != "z" && side != "x") {
    throw std::invalid_argument("--side must be z, x or both");
  }
  LoadedCode c = load_code(spec);
  const io::DistanceRecord r = distances(c, count, path_cap);
  json j;
  if (side != "x") {
    j["d_z"] = r.d_z;
  }
  if (side != "z") {
    j["d_x"] = r.d_x;
  }
  if (count && side != "x") {
    j["n_d_z"] = *r.n_d_z;
  }
  if (count && side != "z") {
    j["n_d_x"] = *r.n_d_x;
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_simulate(const std::string& spec, double p, const std::string& q_text, const std::string& rounds_text,
                 std::size_t samples, const std::optional<std::uint64_t>& seed_opt, std::size_t copies,
                 const Channels& channels, std::size_t jobs, const std::string& out) {
  LoadedCode c = load_code(spec);
  const auto q_fixed = parse_q(q_text);
  const double q = q_fixed.value_or(p);
  const std::size_t T = resolve_rounds(parse_rounds(rounds_text), q_fixed.value_or(0.0), !q_fixed, c);
  const std::uint64_t seed = pick_seed(seed_opt);
  SampleOptions opts;
  opts.copies = copies;
  opts.jobs = jobs;
  channels.apply(opts);
  const McResult r = estimate(c.code, NoiseParams::make(p, q, T), samples, seed, opts);
  write_output(out, csv_header() + csv_row(r));
  if (!out.empty() && out != "-") {
    std::cout << r.code << ": pbar=" << format_double(r.pbar) << " [" << format_double(r.pbar_lo) << ", "
              << format_double(r.pbar_hi) << "] p_round=" << format_double(r.p_round) << " seed=" << seed << "\n";
  }
  return 0;
}

int cmd_threshold(const std::string& config_path, const std::string& out, std::size_t jobs) {
  const json cfg = read_config(config_path);
  std::vector<LoadedCode> loaded;
  for (const auto& spec : cfg.at("codes")) {
    loaded.push_back(load_code(spec.get<std::string>()));
  }
  const auto grid = cfg.at("p_grid").get<std::vector<double>>();
  ScanNoise noise;
  const json q_mode = cfg.value("q_mode", json("equal"));
  if (q_mode.is_string()) {
    if (q_mode.get<std::string>() != "equal") {
      throw std::invalid_argument("config: q_mode must be \"equal\" or a number");
    }
  } else {
    noise.q_equal = false;
    noise.q = q_mode.get<double>();
  }
  const json t = cfg.value("T", json("auto"));
  if (t.is_string()) {
    if (t.get<std::string>() != "auto") {
      throw std::invalid_argument("config: T must be \"auto\" or an integer");
    }
    // Auto with perfect checks is a single round; otherwise each code runs d_Z rounds.
    noise.T = (!noise.q_equal && noise.q == 0.0) ? 1 : 0;
    if (noise.T == 0) {
      for (auto& c : loaded) {
        ensure_d_z(c);
      }
    }
  } else {
    noise.T = t.get<std::size_t>();
  }
  const std::uint64_t seed =
      pick_seed(cfg.contains("seed") ? std::optional<std::uint64_t>(cfg["seed"].get<std::uint64_t>()) : std::nullopt);
  SampleOptions opts;
  opts.copies = cfg.value("copies", std::size_t{1});
  opts.jobs = jobs;
  Channels{cfg.value("channels", std::string("both"))}.apply(opts);
  std::vector<CssCode> codes;
  for (auto& c : loaded) {
    codes.push_back(c.code);
  }
  const ScanResult r = threshold_scan(codes, grid, noise, cfg.at("samples").get<std::size_t>(), seed, opts);
  std::string csv = csv_header();
  for (const auto& row : r.rows) {
    csv += csv_row(row);
  }
  write_output(out, csv);
  std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
  for (const auto& x : r.crossings) {
    log << "crossing " << x.a << " x " << x.b << ": " << (x.p ? format_double(*x.p) : "none in grid") << "\n";
  }
  return 0;
}

int cmd_pmax(const std::string& spec, double target, const std::string& mode, const std::string& q_text,
             const std::string& rounds_text, const std::string& sides, bool per_round,
             const std::optional<std::uint64_t>& seed_opt, std::size_t max_samples, std::size_t jobs) {
  LoadedCode c = load_code(spec);
  const auto q_fixed = parse_q(q_text);
  const bool noisy = !q_fixed || *q_fixed > 0.0;
  const std::size_t T = resolve_rounds(parse_rounds(rounds_text), q_fixed.value_or(0.0), !q_fixed, c);
  double p_max = 0.0;
  if (mode == "formula") {
    if (q_fixed && *q_fixed != 0.0) {
      throw std::invalid_argument("pmax --mode formula supports q equal (noisy) or q 0 (noiseless)");
    }
    const io::DistanceRecord r = distances(c, true, DistanceOptions{}.path_cap);
    std::vector<FormulaTerm> terms{{r.d_z, *r.n_d_z}};
    if (sides == "both") {
      terms.push_back({r.d_x, *r.n_d_x});
    } else if (sides != "z") {
      throw std::invalid_argument("--sides must be z or both");
    }
    p_max = p_max_formula(terms, noisy ? T : 1, target, per_round);
  } else if (mode == "mc") {
    const std::uint64_t seed = pick_seed(seed_opt);
    PmaxMcOptions o;
    o.max_samples = max_samples;
    o.per_round_target = per_round;
    SampleOptions so;
    so.jobs = jobs;
    Channels{sides == "z" ? "z" : "both"}.apply(so);
    // A fixed q is turned into the ratio the search keeps while moving p.
    const double ratio = q_fixed ? 0.0 : 1.0;
    if (q_fixed && *q_fixed != 0.0) {
      throw std::invalid_argument("pmax --mode mc supports q equal or q 0");
    }
    p_max = p_max_mc(c.code, ratio, T, target, seed, o, so);
  } else {
    throw std::invalid_argument("--mode must be mc or formula");
  }
  json j;
  j["code"] = c.code.name;
  j["mode"] = mode;
  j["target"] = target;
  j["T"] = T;
  j["p_max"] = p_max;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_overhead(const std::string& config_path, const std::string& out) {
  const json cfg = read_config(config_path);
  std::vector<CssCode> codes;
  for (const auto& spec : cfg.at("codes")) {
    codes.push_back(load_code(spec.get<std::string>()).code);
  }
  const double target = cfg.value("target", 1e-8);
  write_output(out, overhead_csv(overhead_table(codes, target)));
  return 0;
}

int cmd_dehn_verify(const std::string& code_spec, std::size_t genus) {
  bool all = true;
  auto report = [&all](const std::string& what, bool ok, const std::string& detail = "") {
    all = all && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << what << (detail.empty() ? "" : ": " + detail) << "\n";
  };
  for (const auto& gen : dehn::standard_generators(genus)) {
    const auto twist = dehn::transvection(dehn::SymplecticFrame(genus), gen.gamma);
    const auto circuit = dehn::frame_of_circuit(genus, dehn::generator_circuit(genus, gen));
    report("generator " + gen.name + " equals its CNOT circuit (g=" + std::to_string(genus) + ")",
           twist == circuit && twist.is_symplectic());
  }
  if (genus >= 2) {
    const auto nine = dehn::swap_via_twists(genus, 1);
    report("9-twist handle swap", nine.verified && nine.word.size() == 9, nine.to_string());
    const auto seven = dehn::short_swap_search(genus, 1, 7);
    report("handle swap within 7 twists over the enlarged set", seven && seven->verified,
           seven ? seven->to_string() : "no word found");
  }
  std::vector<std::string> specs = {"toric-3", "toric-4", code_spec.empty() ? "hyp45-60" : code_spec};
  for (const auto& spec : specs) {
    const TiledSurface s = resolve_surface(spec);
    const CssCode code = derive_code(s);
    gf2::BitVec loop = find_min_weight_logical(code, Side::Z);
    const auto once = dehn::circuit_twist(s, code, loop, 1);
    const auto twice = dehn::circuit_twist(s, code, loop, 2);
    std::ostringstream detail;
    detail << once.schedule.layers.size() << " layers, X-check weights " << once.x_weight_min << ".."
           << once.x_weight_max;
    report("circuit twist on " + s.name() + " (loop weight " + std::to_string(loop.popcount()) + ")", once.ok(),
           detail.str());
    report("circuit twist on " + s.name() + " applied twice is the identity",
           twice.ok() && twice.measured == gf2::BitMatrix::identity(2 * code.k));
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic and semi-hyperbolic surface code toolkit"};
  app.require_subcommand(1);
  std::size_t jobs = 0;
  app.add_option("--jobs,-j", jobs, "Worker threads (default: HYPSC_JOBS or all cores)");

  std::string family;
  std::size_t param = 0;
  std::string base;
  std::string out;
  auto* build = app.add_subcommand("build", "Write a code file");
  build->add_option("--family", family, "toric | rotated-toric | hyperbolic-45 | semi-hyperbolic")->required();
  build->add_option("--param", param, "L for toric families, n for hyperbolic-45, l for semi-hyperbolic")->required();
  build->add_option("--base", base, "Base code (file or catalog name) for hyperbolic-45 / semi-hyperbolic");
  build->add_option("--out", out, "Output code file")->required();

  std::string code;
  bool count = false;
  std::string side = "both";
  std::size_t path_cap = DistanceOptions{}.path_cap;
  auto* distance = app.add_subcommand("distance", "Minimum logical weights (and their counts)");
  distance->add_option("code", code, "Code file or name")->required();
  distance->add_flag("--count", count, "Also count minimum-weight logicals");
  distance->add_option("--side", side, "z | x | both");
  distance->add_option("--path-cap", path_cap, "Shortest-path enumeration budget for --count");

  double p = 0.0;
  std::string q = "equal";
  std::string rounds = "auto";
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::size_t copies = 1;
  Channels channels;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo logical failure rate");
  simulate->add_option("code", code, "Code file or name")->required();
  simulate->add_option("--p", p, "Qubit error probability per round")->required();
  simulate->add_option("--q", q, "Check error probability: equal (q = p) or a number");
  simulate->add_option("--rounds", rounds, "auto (d_Z, or 1 when q = 0) or T");
  simulate->add_option("--samples", samples, "Number of samples")->required();
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--copies", copies, "Independent code blocks per sample");
  simulate->add_option("--channels", channels.value, "both | z | x");
  simulate->add_option("--out", out, "CSV output (default stdout)");

  std::string config;
  auto* threshold = app.add_subcommand("threshold", "Scan codes over a p grid and report crossings");
  threshold->add_option("--config", config, "Experiment JSON")->required();
  threshold->add_option("--out", out, "CSV output (default stdout)");

  double target = 0.0;
  std::string mode = "formula";
  std::string sides = "z";
  bool per_round = false;
  std::size_t max_samples = 1'000'000;
  auto* pmax = app.add_subcommand("pmax", "Largest p meeting a logical error target");
  pmax->add_option("code", code, "Code file or name")->required();
  pmax->add_option("--target", target, "Target logical error")->required();
  pmax->add_option("--mode", mode, "mc | formula");
  pmax->add_option("--q", q, "equal (noisy) or 0 (noiseless)");
  pmax->add_option("--rounds", rounds, "auto or T");
  pmax->add_option("--sides", sides, "z | both");
  pmax->add_flag("--per-round", per_round, "Apply the target to P_round instead of P-bar");
  pmax->add_option("--seed", seed, "Master seed (mc mode)");
  pmax->add_option("--max-samples", max_samples, "Sample budget per point (mc mode)");

  auto* overhead = app.add_subcommand("overhead", "Encoding rate against p_max");
  overhead->add_option("--config", config, "Overhead JSON: {codes:[...], target}")->required();
  overhead->add_option("--out", out, "CSV output (default stdout)");

  std::size_t genus = 2;
  auto* dehn_verify = app.add_subcommand("dehn-verify", "Check Dehn twist identities and circuits");
  dehn_verify->add_option("--code", code, "Code whose shortest Z loop is twisted (default hyp45-60)");
  dehn_verify->add_option("--genus", genus, "Genus for the homology checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) {
      return cmd_build(family, param, base, out);
    }
    if (*distance) {
      return cmd_distance(code, count, side, path_cap);
    }
    if (*simulate) {
      return cmd_simulate(code, p, q, rounds, samples, seed, copies, channels, jobs, out);
    }
    if (*threshold) {
      return cmd_threshold(config, out, jobs);
    }
    if (*pmax) {
      return cmd_pmax(code, target, mode, q, rounds, sides, per_round, seed, max_samples, jobs);
    }
    if (*overhead) {
      return cmd_overhead(config, out);
    }
    if (*dehn_verify) {
      return cmd_dehn_verify(code, genus);
    }
  } catch (const std::exception& e) {
    std::cerr << "hypsc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
