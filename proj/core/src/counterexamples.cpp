#include "pathfunc/counterexamples.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "pathfunc/error.hpp"
#include "pathfunc/estimator.hpp"
#include "pathfunc/functionals.hpp"
#include "pathfunc/models.hpp"
#include "pathfunc/oracles.hpp"
#include "pathfunc/schemes.hpp"

namespace pathfunc {

TangencyReport counterexample_tangency(std::span<const double> h_values, std::size_t grid_intervals) {
  if (grid_intervals == 0 || grid_intervals % 2 != 0) {
    throw PreconditionError("counterexample_tangency: grid must have an even number of intervals");
  }
  static constexpr double kDefaultH[] = {0.1, 0.01, 0.001};
  if (h_values.empty()) h_values = kDefaultH;

  const auto parabola = [](double s) { return 1.0 - (s - 0.5) * (s - 0.5); };
  const BarrierPair band(Barrier::infinite(), Barrier::constant(1.0));
  const StepPath x = sample_function(uniform_grid(grid_intervals), parabola);

  TangencyReport rep;
  rep.tau = hitting_time(x, band);
  rep.partition = classify_c_partition(x, band);
  for (double h : h_values) {
    const StepPath xh = sample_function(uniform_grid(grid_intervals), [&](double s) { return parabola(s) - h; });
    rep.tau_h.emplace_back(h, hitting_time(xh, band));
  }
  return rep;
}

BesselReport counterexample_bessel(std::span<const double> h_grid, std::size_t n_paths,
                                   std::uint64_t seed, std::size_t workers) {
  if (h_grid.empty()) throw PreconditionError("counterexample_bessel: h grid must not be empty");
  const SdeModel model = bessel3(1.0);
  const FunctionalSpec spec = FunctionalSpec::uniform(1, payoff_terminal(TerminalKind::Value, 0.0, 0.0));
  EstimateOptions opts;
  opts.workers = workers;
  opts.ui_override = true;  // the point of the harness is the UI failure

  BesselReport rep;
  rep.oracle_mean = bessel3_mean(1.0, 1.0);
  rep.oracle_reciprocal = bessel3_reciprocal_mean(1.0, 1.0);
  for (double h : h_grid) {
    SchemeConfig cfg{SchemeKind::Euler, h, std::nullopt, std::nullopt, 1.0 / h};
    const Estimate e = estimate(model, cfg, spec, n_paths, seed, opts);
    rep.capped.push_back({h, 1.0 / h, e.mean, e.std_error});
  }
  {
    SchemeConfig cfg{SchemeKind::Euler, h_grid.front(), std::nullopt, std::nullopt, std::nullopt};
    const Estimate e = estimate(model, cfg, spec, n_paths, seed, opts);
    rep.uncapped = {h_grid.front(), std::numeric_limits<double>::infinity(), e.mean, e.std_error};
  }
  const BesselRow& fine = rep.capped.back();
  rep.capped_mean_near_one = std::abs(fine.mean - 1.0) <= 3.0 * fine.std_error;
  rep.oracle_below_one = 1.0 - rep.oracle_mean > 5.0 * fine.std_error;
  rep.uncapped_above_oracle = rep.uncapped.mean - rep.oracle_mean > 3.0 * rep.uncapped.std_error;
  return rep;
}

StrongReport counterexample_strong(std::span<const std::size_t> n_grid, std::size_t n_paths,
                                   std::size_t substeps, std::uint64_t seed, std::size_t workers) {
  if (n_grid.empty() || n_paths < 2 || substeps == 0) {
    throw PreconditionError("counterexample_strong: need a grid, two or more paths and substeps");
  }
  if (workers == 0) workers = default_workers();
  StrongReport rep;
  for (std::size_t n : n_grid) {
    if (n == 0) throw PreconditionError("counterexample_strong: N must be positive");
    const double fine_sd = std::sqrt(1.0 / (static_cast<double>(n) * static_cast<double>(substeps)));
    const std::function<Moments(std::size_t, std::size_t)> chunk = [&](std::size_t b, std::size_t e) {
      Moments m;
      for (std::size_t p = b; p < e; ++p) {
        StreamNoise noise(RngStream{seed ^ (0x5bd1e995ULL * n), p});
        double w = 0.0, worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double left = w;
          for (std::size_t k = 0; k < substeps; ++k) {
            w += fine_sd * noise.normal(0);
            worst = std::max(worst, std::abs(w - left));
          }
        }
        m.add(std::sqrt(static_cast<double>(n)) * worst);
      }
      return m;
    };
    Moments total;
    for (const Moments& m : run_chunked(n_paths, workers, 16, chunk)) total.merge(m);
    const Estimate e = make_estimate(total, 1.0 / static_cast<double>(n), 0.0);
    rep.rows.push_back({n, e.mean, e.std_error, std::sqrt(2.0 * std::log(static_cast<double>(n)))});
  }
  rep.strictly_increasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.strictly_increasing = rep.strictly_increasing && rep.rows[i].scaled_error > rep.rows[i - 1].scaled_error;
  }
  return rep;
}

}  // namespace pathfunc
