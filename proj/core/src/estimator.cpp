#include "pathfunc/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "pathfunc/error.hpp"

namespace pathfunc {

void Moments::add(double x) {
  ++n;
  const double delta = x - mean;
  mean += delta / static_cast<double>(n);
  m2 += delta * (x - mean);
}

void Moments::merge(const Moments& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n);
  const double nb = static_cast<double>(o.n);
  const double total = na + nb;
  const double delta = o.mean - mean;
  mean += delta * nb / total;
  m2 += o.m2 + delta * delta * na * nb / total;
  n += o.n;
}

Estimate make_estimate(const Moments& m, double h, double elapsed) {
  Estimate e;
  e.mean = m.mean;
  e.n_paths = m.n;
  e.std_error = m.n > 1 ? std::sqrt(m.variance() / static_cast<double>(m.n)) : 0.0;
  e.ci_lo = e.mean - 1.96 * e.std_error;
  e.ci_hi = e.mean + 1.96 * e.std_error;
  e.h = h;
  e.elapsed = elapsed;
  return e;
}

std::size_t default_workers() {
  if (const char* env = std::getenv("PATHFUNC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::size_t resolve(std::size_t workers) { return workers == 0 ? default_workers() : workers; }

void check_policy(const FunctionalSpec& spec, const EstimateOptions& options) {
  if (std::holds_alternative<Bounded>(spec.payoff.growth)) return;
  if (options.ui_override) return;
  if (options.ui != nullptr && options.ui->pass) return;
  throw PolicyError("payoff '" + spec.payoff.name +
                    "' has linear growth; run the uniform-integrability diagnostic or set the override");
}

PathSampler model_sampler(const SdeModel& model, const SchemeConfig& config) {
  return [&model, config](RngStream s) { return simulate_path(model, config, s); };
}

}  // namespace

Estimate estimate(const PathSampler& sampler, double h, const FunctionalSpec& spec,
                  std::size_t n_paths, std::uint64_t seed, const EstimateOptions& options) {
  if (n_paths < 2) throw PreconditionError("estimate: need at least two paths");
  check_policy(spec, options);
  const auto start = std::chrono::steady_clock::now();
  const std::function<Moments(std::size_t, std::size_t)> chunk = [&](std::size_t b, std::size_t e) {
    Moments m;
    for (std::size_t i = b; i < e; ++i) {
      try {
        m.add(evaluate(sampler(RngStream{seed, i}), spec));
      } catch (SimulationError& err) {
        err.set_stream_id(static_cast<std::int64_t>(i));
        throw;
      }
    }
    return m;
  };
  const auto parts = run_chunked(n_paths, resolve(options.workers), options.chunk_size, chunk);
  Moments total;
  for (const Moments& m : parts) total.merge(m);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return make_estimate(total, h, elapsed);
}

Estimate estimate(const SdeModel& model, const SchemeConfig& config, const FunctionalSpec& spec,
                  std::size_t n_paths, std::uint64_t seed, const EstimateOptions& options) {
  validate(model, config);
  return estimate(model_sampler(model, config), config.h, spec, n_paths, seed, options);
}

UiReport ui_diagnostic(const SdeModel& model, const SchemeConfig& config, const FunctionalSpec& spec,
                       std::span<const double> h_grid, std::size_t n_paths, std::uint64_t seed,
                       const UiOptions& options) {
  if (h_grid.empty()) throw PreconditionError("ui_diagnostic: h grid must not be empty");
  UiReport rep;
  if (std::holds_alternative<Bounded>(spec.payoff.growth)) {
    rep.skipped = true;
    rep.pass = true;
    return rep;
  }
  if (n_paths < 2) throw PreconditionError("ui_diagnostic: need at least two paths");
  for (std::size_t k = 1; k <= options.max_cutoff_exponent; ++k) {
    rep.cutoffs.push_back(std::ldexp(1.0, static_cast<int>(k)));
  }
  rep.uniform_tail.assign(rep.cutoffs.size(), 0.0);

  const std::size_t coord = spec.coordinate;
  if (coord >= model.dim_state()) throw PreconditionError("ui_diagnostic: coordinate out of range");
  for (double h : h_grid) {
    SchemeConfig cfg = config;
    cfg.h = h;
    validate(model, cfg);
    const std::function<std::vector<double>(std::size_t, std::size_t)> chunk =
        [&](std::size_t b, std::size_t e) {
          std::vector<double> out;
          out.reserve(e - b);
          for (std::size_t i = b; i < e; ++i) {
            const StepPath p = simulate_path(model, cfg, RngStream{seed, i});
            out.push_back(std::abs(p.state(p.size() - 1)[coord]));
          }
          return out;
        };
    const auto parts = run_chunked(n_paths, resolve(options.workers), 256, chunk);
    UiRow row;
    row.h = h;
    row.tails.assign(rep.cutoffs.size(), 0.0);
    for (const auto& part : parts) {
      for (double x : part) {
        row.second_moment += x * x;
        for (std::size_t k = 0; k < rep.cutoffs.size(); ++k) {
          if (x > rep.cutoffs[k]) row.tails[k] += x;
        }
      }
    }
    const double n = static_cast<double>(n_paths);
    row.second_moment /= n;
    for (std::size_t k = 0; k < rep.cutoffs.size(); ++k) {
      row.tails[k] /= n;
      rep.uniform_tail[k] = std::max(rep.uniform_tail[k], row.tails[k]);
    }
    rep.moment_bound = std::max(rep.moment_bound, row.second_moment);
    rep.rows.push_back(std::move(row));
  }
  rep.pass = rep.uniform_tail.empty() || rep.uniform_tail.back() <= options.threshold;
  return rep;
}

ConvergenceReport convergence_study(const SamplerFactory& factory, const FunctionalSpec& spec,
                                    std::span<const double> h_grid, std::size_t n_paths,
                                    std::uint64_t seed, std::optional<double> oracle,
                                    std::string oracle_note, const ConvergenceOptions& options) {
  if (h_grid.size() < 3) throw PreconditionError("convergence_study: need at least three h values");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0)) throw PreconditionError("convergence_study: h values must be positive");
    if (i > 0 && !(h_grid[i] < h_grid[i - 1])) {
      throw PreconditionError("convergence_study: h grid must be strictly decreasing");
    }
  }
  ConvergenceReport rep;
  rep.oracle = oracle;
  rep.oracle_note = std::move(oracle_note);
  for (double h : h_grid) {
    ConvergenceRow row;
    row.h = h;
    row.estimate = estimate(factory(h), h, spec, n_paths, seed, options.estimate);
    if (oracle) row.error = std::abs(row.estimate.mean - *oracle);
    rep.rows.push_back(row);
  }
  if (!oracle) return rep;

  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (*rep.rows[i].error > *rep.rows[i - 1].error) ++rep.inversions;
  }
  rep.monotone = rep.inversions <= options.allowed_inversions;

  const ConvergenceRow& fine = rep.rows.back();
  rep.covered = *fine.error <= options.z * fine.estimate.std_error + options.bias_c * std::sqrt(fine.h);
  rep.converged = rep.monotone && rep.covered;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (const auto& r : rep.rows) {
    if (!(*r.error > 0.0)) continue;
    const double x = std::log(r.h), y = std::log(*r.error);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++k;
  }
  if (k >= 2) {
    const double denom = static_cast<double>(k) * sxx - sx * sx;
    if (denom != 0.0) rep.slope = (static_cast<double>(k) * sxy - sx * sy) / denom;
  }
  return rep;
}

ConvergenceReport convergence_study(const SdeModel& model, const SchemeConfig& base,
                                    const FunctionalSpec& spec, std::span<const double> h_grid,
                                    std::size_t n_paths, std::uint64_t seed,
                                    std::optional<double> oracle, std::string oracle_note,
                                    const ConvergenceOptions& options) {
  for (double h : h_grid) {
    SchemeConfig cfg = base;
    cfg.h = h;
    validate(model, cfg);
  }
  const SamplerFactory factory = [&model, base](double h) -> PathSampler {
    SchemeConfig cfg = base;
    cfg.h = h;
    return [&model, cfg](RngStream s) { return simulate_path(model, cfg, s); };
  };
  return convergence_study(factory, spec, h_grid, n_paths, seed, oracle, std::move(oracle_note), options);
}

}  // namespace pathfunc
