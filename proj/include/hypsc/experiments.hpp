#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypsc/decoder.hpp"
#include "hypsc/surface.hpp"

namespace hypsc {

/// splitmix64 finaliser; per-sample RNG streams are seeded with mix(seed, index).
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Worker count: HYPSC_JOBS if set, else the hardware concurrency (at least 1).
std::size_t default_jobs();

struct SampleOptions {
  /// Independent code blocks per sample; the sample fails if any block fails.
  std::size_t copies = 1;
  bool z_errors = true;
  bool x_errors = true;
  /// 0 selects default_jobs().
  std::size_t jobs = 0;
};

struct McResult {
  std::string code;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d_z = 0;
  std::size_t d_x = 0;
  NoiseParams noise;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double pbar = 0.0;
  double pbar_lo = 0.0;
  double pbar_hi = 0.0;
  double p_round = 0.0;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::size_t failures, std::size_t samples);

/// Solves (1 - P_round)^T = 1 - pbar.
double per_round(double pbar, std::size_t T);

/// Logical failure rate of one sample (all copies, both channels unless disabled).
bool run_sample(const CssCode& code, const NoiseParams& noise, const SampleOptions& options, Rng& rng);

/// Monte Carlo estimate. Results depend only on (seed, samples), not on the worker count.
McResult estimate(const CssCode& code, const NoiseParams& noise, std::size_t samples, std::uint64_t seed,
                  const SampleOptions& options = {});

/// N_d (3/4 - (-1)^d/4) C(d, ceil(d/2)) p^ceil(d/2), times T when `noisy`.
double approx_logical_error(std::size_t n_d, std::size_t d, std::size_t T, double p, bool noisy);

/// Largest p in [lo, hi] with f(p) <= target for a nondecreasing f, by bisection.
/// Throws std::domain_error if f(lo) > target.
template <typename F>
double bisect_max(F&& f, double target, double lo, double hi, std::size_t iterations = 60) {
  if (f(lo) > target) {
    throw std::domain_error("p_max: target not reachable inside the search bracket");
  }
  if (f(hi) <= target) {
    return hi;
  }
  for (std::size_t i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

struct FormulaTerm {
  std::size_t d = 0;
  std::size_t n_d = 0;
};

/// p_max from the closed form (capped at 1), summing `terms` (one per channel). With
/// `per_round_target` the target applies to the per-round value (T factor dropped).
double p_max_formula(const std::vector<FormulaTerm>& terms, std::size_t T, double target, bool per_round_target,
                     double p_hi = 0.5);

struct PmaxMcOptions {
  double p_lo = 1e-5;
  double p_hi = 0.2;
  std::size_t min_samples = 1000;
  std::size_t max_samples = 1'000'000;
  /// Stop sampling a point once the CI half-width is below this fraction of the target.
  double relative_half_width = 0.2;
  std::size_t iterations = 12;
  bool per_round_target = false;
};

double p_max_mc(const CssCode& code, double q_over_p, std::size_t T, double target, std::uint64_t seed,
                const PmaxMcOptions& options = {}, const SampleOptions& sample = {});

/// p where two curves cross, by linear interpolation of log values between adjacent grid
/// points at the first sign change of log(a) - log(b). Points with a zero value are skipped.
std::optional<double> crossing_point(const std::vector<double>& p, const std::vector<double>& a,
                                     const std::vector<double>& b);

/// How q and T follow p and the code in a scan.
struct ScanNoise {
  /// q = p when true, else the fixed value q.
  bool q_equal = true;
  double q = 0.0;
  /// 0 selects T = d_Z.
  std::size_t T = 0;
};

struct ScanResult {
  std::vector<McResult> rows;
  struct Crossing {
    std::string a;
    std::string b;
    std::optional<double> p;
  };
  std::vector<Crossing> crossings;
};

/// Cell (code i, p j) uses the RNG streams of stream_seed(seed, i * |p_grid| + j).
ScanResult threshold_scan(const std::vector<CssCode>& codes, const std::vector<double>& p_grid,
                          const ScanNoise& noise, std::size_t samples, std::uint64_t seed,
                          const SampleOptions& options = {});

struct OverheadRow {
  std::string code;
  std::size_t n = 0;
  std::size_t k = 0;
  double rate = 0.0;
  std::size_t d = 0;
  std::size_t n_d = 0;
  double p_max = 0.0;
};

/// Rate k/n against formula-mode p_max of the per-round target, Z side, T = d_Z.
std::vector<OverheadRow> overhead_table(const std::vector<CssCode>& codes, double target_round);

std::string csv_header();
std::string csv_row(const McResult& r);
std::string overhead_csv(const std::vector<OverheadRow>& rows);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace hypsc
