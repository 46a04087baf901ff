#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathfunc/functionals.hpp"
#include "pathfunc/models.hpp"
#include "pathfunc/rng.hpp"
#include "pathfunc/schemes.hpp"

namespace pathfunc {

/// Running count/mean/M2 (Welford); merges are exact for identical inputs in identical order.
struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const Moments& other);
  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t n_paths = 0;
  double h = 0.0;
  double elapsed = 0.0;  ///< seconds
};

/// mean +- 1.96 se.
Estimate make_estimate(const Moments& m, double h, double elapsed);

struct UiReport;

struct EstimateOptions {
  std::size_t workers = 0;      ///< 0: default_workers()
  std::size_t chunk_size = 256; ///< paths per reduction block; fixes the summation order
  bool ui_override = false;     ///< accept Linear-growth payoffs without a UI report
  const UiReport* ui = nullptr; ///< passing UI diagnostic that licenses Linear payoffs
};

/// PATHFUNC_WORKERS if set, otherwise the hardware concurrency (at least 1).
std::size_t default_workers();

/// Produces the path for one stream; path i always uses stream (seed, i).
using PathSampler = std::function<StepPath(RngStream)>;

/// Monte Carlo mean of evaluate(path_i, spec) over n_paths independent streams.
/// Bit-reproducible for a given (seed, n_paths, chunk_size), whatever the worker count.
Estimate estimate(const SdeModel& model, const SchemeConfig& config, const FunctionalSpec& spec,
                  std::size_t n_paths, std::uint64_t seed, const EstimateOptions& options = {});

Estimate estimate(const PathSampler& sampler, double h, const FunctionalSpec& spec,
                  std::size_t n_paths, std::uint64_t seed, const EstimateOptions& options = {});

/// Applies `fn` to every path index in fixed-size chunks across workers and
/// returns the per-chunk results in chunk order. Used by every parallel
/// driver so that results never depend on scheduling.
template <typename T>
std::vector<T> run_chunked(std::size_t n, std::size_t workers, std::size_t chunk_size,
                           const std::function<T(std::size_t begin, std::size_t end)>& fn);

// ---------------------------------------------------------------------------

struct UiOptions {
  std::size_t max_cutoff_exponent = 8;  ///< cutoffs A = 2, 4, ..., 2^max
  double threshold = 1e-2;              ///< bound on sup_h E[|X^h(1)| 1{|X^h(1)| > A_max}]
  std::size_t workers = 0;
};

struct UiRow {
  double h = 0.0;
  double second_moment = 0.0;  ///< E[|X^h(1)|^2]
  std::vector<double> tails;   ///< E[|X^h(1)| 1{|X^h(1)| > A}] per cutoff
};

struct UiReport {
  bool skipped = false;  ///< bounded payoff: nothing to check
  std::vector<double> cutoffs;
  std::vector<UiRow> rows;
  std::vector<double> uniform_tail;  ///< max over h, per cutoff
  double moment_bound = 0.0;         ///< sup_h E[|X^h(1)|^2]
  bool pass = false;
};

/// Uniform-integrability evidence for {X^h(1)} over the h grid.
UiReport ui_diagnostic(const SdeModel& model, const SchemeConfig& config, const FunctionalSpec& spec,
                       std::span<const double> h_grid, std::size_t n_paths, std::uint64_t seed,
                       const UiOptions& options = {});

// ---------------------------------------------------------------------------

struct ConvergenceRow {
  double h = 0.0;
  Estimate estimate;
  std::optional<double> error;  ///< |mean - oracle|
};

struct ConvergenceOptions {
  double bias_c = 1.0;             ///< bias allowance C sqrt(h) on the finest row
  double z = 2.5758293035489004;   ///< 99% two-sided normal quantile
  std::size_t allowed_inversions = 1;
  EstimateOptions estimate;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;  ///< decreasing h
  std::optional<double> oracle;
  std::string oracle_note;
  std::optional<double> slope;       ///< least-squares slope of log error vs log h
  std::size_t inversions = 0;        ///< rows whose error exceeds the previous row's
  bool monotone = false;
  bool covered = false;              ///< finest 99% CI, widened by C sqrt(h), covers the oracle
  bool converged = false;
};

using SamplerFactory = std::function<PathSampler(double h)>;

/// Runs estimate per h (strictly decreasing, at least three entries).
ConvergenceReport convergence_study(const SamplerFactory& factory, const FunctionalSpec& spec,
                                    std::span<const double> h_grid, std::size_t n_paths,
                                    std::uint64_t seed, std::optional<double> oracle,
                                    std::string oracle_note, const ConvergenceOptions& options = {});

ConvergenceReport convergence_study(const SdeModel& model, const SchemeConfig& base,
                                    const FunctionalSpec& spec, std::span<const double> h_grid,
                                    std::size_t n_paths, std::uint64_t seed,
                                    std::optional<double> oracle, std::string oracle_note,
                                    const ConvergenceOptions& options = {});

}  // namespace pathfunc

#include "pathfunc/detail/run_chunked.hpp"
