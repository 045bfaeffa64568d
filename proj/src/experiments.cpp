#include "hypsc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hypsc/distance.hpp"

namespace hypsc {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ index);
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("HYPSC_JOBS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<std::size_t>(v);
    }
    throw std::invalid_argument("HYPSC_JOBS must be a positive integer");
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::pair<double, double> wilson_interval(std::size_t failures, std::size_t samples) {
  if (samples == 0) {
    return {0.0, 1.0};
  }
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(samples);
  const double phat = static_cast<double>(failures) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (phat + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double per_round(double pbar, std::size_t T) {
  if (T == 0) {
    throw std::invalid_argument("per_round: T must be positive");
  }
  if (pbar >= 1.0) {
    return 1.0;
  }
  // 1 - (1 - pbar)^(1/T), written to keep precision for small pbar.
  return -std::expm1(std::log1p(-pbar) / static_cast<double>(T));
}

namespace {

struct Channel {
  Side side;
  std::vector<gf2::BitVec> crossing;
  SpaceTimeGraph graph;
};

class SampleRunner {
 public:
  SampleRunner(const CssCode& code, const NoiseParams& noise, const SampleOptions& options)
      : code_(&code), noise_(noise), options_(options) {
    noise.validate();
    if (options.z_errors) {
      channels_.push_back({Side::Z, code.crossing_basis(Side::Z), SpaceTimeGraph(code.graph(Side::Z), noise)});
    }
    if (options.x_errors) {
      channels_.push_back({Side::X, code.crossing_basis(Side::X), SpaceTimeGraph(code.graph(Side::X), noise)});
    }
  }

  bool run(Rng& rng) {
    if (decoders_.size() != channels_.size()) {
      decoders_.clear();
      for (const auto& ch : channels_) {
        decoders_.emplace_back(ch.graph);
      }
    }
    bool failed = false;
    // Every copy is always sampled so the stream layout does not depend on outcomes.
    for (std::size_t c = 0; c < options_.copies; ++c) {
      for (std::size_t i = 0; i < channels_.size(); ++i) {
        const auto& ch = channels_[i];
        const SyndromeHistory h = sample_history(*code_, noise_, ch.side, rng);
        if (h.marked.empty() && std::all_of(h.new_errors.begin(), h.new_errors.end(),
                                            [](const auto& r) { return r.empty(); })) {
          continue;
        }
        const gf2::BitVec correction = decoders_[i].decode(h.marked, rng);
        const gf2::BitVec residual = h.total_error(code_->n) ^ correction;
        if (code_->checks(ch.side).multiply(residual).any()) {
          throw std::logic_error("estimate: residual error is not a cycle");
        }
        for (const auto& x : ch.crossing) {
          if (residual.dot(x)) {
            failed = true;
            break;
          }
        }
      }
    }
    return failed;
  }

 private:
  const CssCode* code_;
  NoiseParams noise_;
  SampleOptions options_;
  std::vector<Channel> channels_;
  std::vector<MatchingDecoder> decoders_;
};

// Counts failures over sample indices [0, samples) using `jobs` threads.
std::size_t count_failures(const CssCode& code, const NoiseParams& noise, std::size_t samples, std::uint64_t seed,
                           const SampleOptions& options) {
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs == 0 ? default_jobs() : options.jobs);
  constexpr std::size_t kChunk = 64;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> failures{0};
  auto worker = [&]() {
    SampleRunner runner(code, noise, options);
    Rng rng;
    std::size_t local = 0;
    while (true) {
      const std::size_t start = next.fetch_add(kChunk);
      if (start >= samples) {
        break;
      }
      const std::size_t stop = std::min(samples, start + kChunk);
      for (std::size_t i = start; i < stop; ++i) {
        rng.seed(stream_seed(seed, i));
        local += runner.run(rng) ? 1 : 0;
      }
    }
    failures += local;
  };
  if (jobs == 1 || samples <= kChunk) {
    worker();
    return failures;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t j = 0; j < std::min(jobs, (samples + kChunk - 1) / kChunk); ++j) {
    threads.emplace_back([&]() {
      try {
        worker();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next = samples;
      }
    });
  }
  for (auto& t : threads) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return failures;
}

std::size_t distance_or_compute(const CssCode& code, Side side) {
  const auto& d = side == Side::Z ? code.d_z : code.d_x;
  return d ? *d : min_weight_logical(code, side);
}

}  // namespace

bool run_sample(const CssCode& code, const NoiseParams& noise, const SampleOptions& options, Rng& rng) {
  SampleRunner runner(code, noise, options);
  return runner.run(rng);
}

McResult estimate(const CssCode& code, const NoiseParams& noise, std::size_t samples, std::uint64_t seed,
                  const SampleOptions& options) {
  if (samples == 0) {
    throw std::invalid_argument("estimate: at least one sample is required");
  }
  if (options.copies == 0) {
    throw std::invalid_argument("estimate: copies must be positive");
  }
  McResult r;
  r.code = code.name;
  if (options.copies > 1) {
    r.code += "x" + std::to_string(options.copies);
  }
  r.n = code.n * options.copies;
  r.k = code.k * options.copies;
  r.d_z = distance_or_compute(code, Side::Z);
  r.d_x = distance_or_compute(code, Side::X);
  r.noise = noise;
  r.samples = samples;
  r.failures = noise.p == 0.0 && noise.q == 0.0 ? 0 : count_failures(code, noise, samples, seed, options);
  r.pbar = static_cast<double>(r.failures) / static_cast<double>(samples);
  std::tie(r.pbar_lo, r.pbar_hi) = wilson_interval(r.failures, samples);
  r.p_round = per_round(r.pbar, noise.T);
  return r;
}

double approx_logical_error(std::size_t n_d, std::size_t d, std::size_t T, double p, bool noisy) {
  const std::size_t half = (d + 1) / 2;
  const double parity = d % 2 == 0 ? 0.5 : 1.0;
  double binom = 1.0;
  for (std::size_t i = 1; i <= half; ++i) {
    binom = binom * static_cast<double>(d - half + i) / static_cast<double>(i);
  }
  double value = static_cast<double>(n_d) * parity * binom * std::pow(p, static_cast<double>(half));
  if (noisy) {
    value *= static_cast<double>(T);
  }
  return value;
}

double p_max_formula(const std::vector<FormulaTerm>& terms, std::size_t T, double target, bool per_round_target,
                     double p_hi) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw std::invalid_argument("p_max: target must lie in (0, 1]");
  }
  auto f = [&](double p) {
    double total = 0.0;
    for (const auto& t : terms) {
      total += approx_logical_error(t.n_d, t.d, T, p, !per_round_target);
    }
    return std::min(1.0, total);
  };
  return bisect_max(f, target, 0.0, p_hi, 200);
}

double p_max_mc(const CssCode& code, double q_over_p, std::size_t T, double target, std::uint64_t seed,
                const PmaxMcOptions& options, const SampleOptions& sample) {
  if (!(target > 0.0 && target <= 1.0)) {
    throw std::invalid_argument("p_max: target must lie in (0, 1]");
  }
  std::uint64_t call = 0;
  auto f = [&](double p) {
    const NoiseParams noise = NoiseParams::make(p, std::min(0.499, q_over_p * p), T);
    std::size_t n = options.min_samples;
    McResult r;
    while (true) {
      r = estimate(code, noise, n, stream_seed(seed, call), sample);
      const double value = options.per_round_target ? r.p_round : r.pbar;
      const double half = 0.5 * (r.pbar_hi - r.pbar_lo);
      if (half < options.relative_half_width * target || n >= options.max_samples ||
          std::abs(value - target) > 4.0 * half) {
        break;
      }
      n = std::min(options.max_samples, n * 4);
    }
    ++call;
    return options.per_round_target ? r.p_round : r.pbar;
  };
  return bisect_max(f, target, options.p_lo, options.p_hi, options.iterations);
}

std::optional<double> crossing_point(const std::vector<double>& p, const std::vector<double>& a,
                                     const std::vector<double>& b) {
  if (p.size() != a.size() || p.size() != b.size()) {
    throw std::invalid_argument("crossing_point: length mismatch");
  }
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (a[i] <= 0.0 || b[i] <= 0.0) {
      continue;
    }
    if (prev) {
      const std::size_t j = *prev;
      const double g0 = std::log(a[j]) - std::log(b[j]);
      const double g1 = std::log(a[i]) - std::log(b[i]);
      if (g0 == 0.0) {
        return p[j];
      }
      if ((g0 < 0.0) != (g1 < 0.0) || g1 == 0.0) {
        return p[j] + (p[i] - p[j]) * g0 / (g0 - g1);
      }
    }
    prev = i;
  }
  return std::nullopt;
}

ScanResult threshold_scan(const std::vector<CssCode>& codes, const std::vector<double>& p_grid,
                          const ScanNoise& noise, std::size_t samples, std::uint64_t seed,
                          const SampleOptions& options) {
  if (codes.size() < 2) {
    throw std::invalid_argument("threshold_scan: at least two codes are required");
  }
  ScanResult out;
  std::vector<std::vector<double>> curves;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::size_t T = noise.T != 0 ? noise.T : distance_or_compute(codes[i], Side::Z);
    std::vector<double> curve;
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
      const double p = p_grid[j];
      const NoiseParams np = NoiseParams::make(p, noise.q_equal ? p : noise.q, T);
      out.rows.push_back(estimate(codes[i], np, samples, stream_seed(seed, i * p_grid.size() + j), options));
      curve.push_back(out.rows.back().p_round);
    }
    curves.push_back(std::move(curve));
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      out.crossings.push_back({codes[i].name, codes[j].name, crossing_point(p_grid, curves[i], curves[j])});
    }
  }
  return out;
}

std::vector<OverheadRow> overhead_table(const std::vector<CssCode>& codes, double target_round) {
  std::vector<OverheadRow> rows;
  for (const auto& code : codes) {
    const auto [d, n_d] = count_min_weight(code, Side::Z);
    OverheadRow row;
    row.code = code.name;
    row.n = code.n;
    row.k = code.k;
    row.rate = static_cast<double>(code.k) / static_cast<double>(code.n);
    row.d = d;
    row.n_d = n_d;
    row.p_max = p_max_formula({{d, n_d}}, d, target_round, true);
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_header() { return "code,n,k,d_z,d_x,p,q,T,samples,failures,pbar,pbar_lo,pbar_hi,p_round\n"; }

std::string csv_row(const McResult& r) {
  std::ostringstream out;
  out << r.code << ',' << r.n << ',' << r.k << ',' << r.d_z << ',' << r.d_x << ',' << format_double(r.noise.p)
      << ',' << format_double(r.noise.q) << ',' << r.noise.T << ',' << r.samples << ',' << r.failures << ','
      << format_double(r.pbar) << ',' << format_double(r.pbar_lo) << ',' << format_double(r.pbar_hi) << ','
      << format_double(r.p_round) << '\n';
  return out.str();
}

std::string overhead_csv(const std::vector<OverheadRow>& rows) {
  std::ostringstream out;
  out << "code,n,k,rate,d,n_d,p_max\n";
  for (const auto& r : rows) {
    out << r.code << ',' << r.n << ',' << r.k << ',' << format_double(r.rate) << ',' << r.d << ',' << r.n_d << ','
        << format_double(r.p_max) << '\n';
  }
  return out.str();
}

}  // namespace hypsc
