#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <variant>

namespace pathfunc::cli {

namespace {

template <typename T>
T require(const std::optional<T>& v, const char* key) {
  if (!v) throw ConfigError(key, "missing required key");
  return *v;
}

std::string num(double d, bool exact) {
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, exact ? "%.17g" : "%.6g", d);
  return buf;
}

bool csv_format(const RunConfig& c, const Overrides& o) {
  return o.format.value_or(c.output.format.value_or("table")) == "csv";
}

std::uint64_t resolve_seed(const RunConfig& c, const Overrides& o) {
  return o.seed.value_or(c.run.seed.value_or(0));
}

std::size_t resolve_paths(const RunConfig& c, const Overrides& o) {
  return o.n_paths.value_or(c.run.n_paths.value_or(10000));
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size() && j < width.size(); ++j) width[j] = std::max(width[j], r[j].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j + 1 == r.size() && j > 0) {
        out << "  " << r[j];  // last column left-aligned, unpadded
      } else {
        out << (j ? "  " : "") << std::setw(static_cast<int>(width[j])) << r[j];
      }
    }
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

const char* kCsvHeader = "h,mean,stderr,ci_lo,ci_hi,n,elapsed";

std::vector<std::string> estimate_cells(const Estimate& e, bool exact, bool timing) {
  return {num(e.h, exact),     num(e.mean, exact),  num(e.std_error, exact), num(e.ci_lo, exact),
          num(e.ci_hi, exact), std::to_string(e.n_paths), num(timing ? e.elapsed : 0.0, exact)};
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s;
}

/// Writes to output.path when configured, else to `fallback`.
class Sink {
 public:
  Sink(const RunConfig& c, std::ostream& fallback) : out_(&fallback) {
    if (c.output.path) {
      file_ = std::make_unique<std::ofstream>(*c.output.path);
      if (!*file_) throw ConfigError("output.path", "cannot open '" + *c.output.path + "' for writing");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

double sigma_default(const RunConfig& c) { return require(c.model.sigma, "model.sigma"); }

std::vector<double> ui_grid_for(const RunConfig& c) {
  if (!c.run.h_grid.empty()) return c.run.h_grid;
  return {0.0625, 0.03125, 0.015625};
}

/// UI diagnostic honoring scheme.cap = 1/h by running one h at a time.
UiReport run_ui(const RunConfig& c, const SdeModel& model, const SchemeConfig& base, const FunctionalSpec& spec,
                const std::vector<double>& grid, std::size_t n_paths, std::uint64_t seed, std::size_t workers) {
  UiOptions uo;
  uo.workers = workers;
  if (!c.scheme.cap_inverse_h) return ui_diagnostic(model, base, spec, grid, n_paths, seed, uo);
  UiReport merged;
  for (double h : grid) {
    SchemeConfig cfg = base;
    cfg.h = h;
    cfg.cap = 1.0 / h;
    const double one[] = {h};
    UiReport r = ui_diagnostic(model, cfg, spec, one, n_paths, seed, uo);
    if (r.skipped) return r;
    if (merged.cutoffs.empty()) {
      merged.cutoffs = r.cutoffs;
      merged.uniform_tail.assign(r.cutoffs.size(), 0.0);
    }
    for (std::size_t k = 0; k < r.cutoffs.size(); ++k) {
      merged.uniform_tail[k] = std::max(merged.uniform_tail[k], r.uniform_tail[k]);
    }
    merged.moment_bound = std::max(merged.moment_bound, r.moment_bound);
    merged.rows.push_back(r.rows.front());
  }
  merged.pass = merged.uniform_tail.empty() || merged.uniform_tail.back() <= UiOptions{}.threshold;
  return merged;
}

void print_ui(std::ostream& out, const UiReport& r) {
  if (r.skipped) {
    out << "ui: skipped (bounded payoff)\n";
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : r.rows) {
    rows.push_back({num(row.h, false), num(row.second_moment, false), num(row.tails.back(), false)});
  }
  const std::string cutoff = r.cutoffs.empty() ? "A" : num(r.cutoffs.back(), false);
  print_table(out, {"h", "E|X|^2", "tail(A=" + cutoff + ")"}, rows);
  out << "ui: " << (r.pass ? "pass" : "FAIL") << " (sup tail " << num(r.uniform_tail.back(), false)
      << ", moment bound " << num(r.moment_bound, false) << ")\n";
}

bool needs_ui(const FunctionalSpec& spec) { return std::holds_alternative<Linear>(spec.payoff.growth); }

/// Builds the UI licence for Linear payoffs; nullopt means the diagnostic failed (already reported).
std::optional<UiReport> license(const RunConfig& c, const SdeModel& model, const SchemeConfig& scheme,
                                const FunctionalSpec& spec, std::size_t n_paths, std::uint64_t seed,
                                std::size_t workers, std::ostream& err) {
  UiReport rep;
  rep.skipped = true;
  rep.pass = true;
  if (!needs_ui(spec) || c.run.ui_override.value_or(false)) return rep;
  const std::size_t ui_n = c.run.ui_paths.value_or(std::min<std::size_t>(n_paths, 2000));
  rep = run_ui(c, model, scheme, spec, ui_grid_for(c), std::max<std::size_t>(ui_n, 2), seed, workers);
  if (!rep.pass) {
    err << "uniform integrability diagnostic failed; set run.ui_override = true to proceed anyway\n";
    print_ui(err, rep);
    return std::nullopt;
  }
  return rep;
}

SchemeConfig scheme_for(const RunConfig& c, const SchemeConfig& base, double h) {
  SchemeConfig s = base;
  s.h = h;
  if (c.scheme.cap_inverse_h) s.cap = 1.0 / h;
  return s;
}

}  // namespace

std::size_t resolve_workers(const RunConfig& c, const Overrides& o) {
  if (o.workers) return std::max<std::size_t>(*o.workers, 1);
  if (std::getenv("PATHFUNC_WORKERS") != nullptr) return default_workers();
  if (c.run.workers) return *c.run.workers;
  return default_workers();
}

SdeModel build_model(const RunConfig& c) {
  const std::string kind = require(c.model.kind, "model.kind");
  try {
    std::optional<SdeModel> m;
    if (kind == "gbm") {
      m = gbm(c.model.r.value_or(0.0), sigma_default(c), require(c.model.x0, "model.x0"));
    } else if (kind == "bessel3") {
      m = bessel3(c.model.x0.value_or(1.0));
    } else if (kind == "constant") {
      m = constant_coefficients(c.model.drift.value_or(0.0), c.model.diffusion.value_or(1.0),
                                c.model.x0.value_or(0.0));
    } else {
      StochVolParams p;
      p.r = c.model.r.value_or(0.0);
      const double s = sigma_default(c);
      const std::string fn = c.model.sigma_fn.value_or("linear");
      if (fn == "constant") {
        p.sigma_of_y = [s](double) { return s; };
      } else if (fn == "linear") {
        p.sigma_of_y = [s](double y) { return s * y; };
      } else {
        p.sigma_of_y = [s](double y) { return s * std::sqrt(std::max(y, 0.0)); };
      }
      const double mu = c.model.mu.value_or(0.0);
      const double b = c.model.vol_of_vol.value_or(0.0);
      p.mu = [mu](double) { return mu; };
      p.b_vol = [b](double) { return b; };
      p.rho = c.model.rho.value_or(0.0);
      p.x0 = require(c.model.x0, "model.x0");
      p.y0 = c.model.y0.value_or(1.0);
      m = stoch_vol(std::move(p));
    }
    if (c.model.epsilon) m = m->with_sigma_band(*c.model.epsilon);
    return *m;
  } catch (const PreconditionError& e) {
    throw ConfigError("model." + kind, e.what());
  }
}

SchemeConfig build_scheme(const RunConfig& c, const SdeModel& model) {
  const std::string kind = require(c.scheme.kind, "scheme.kind");
  if (kind == "tangency") throw ConfigError("scheme.kind", "tangency is only available to converge");
  SchemeConfig s;
  s.kind = *scheme_kind_from_string(kind);
  s.h = require(c.scheme.h, "scheme.h");
  s.qu_lower = c.scheme.qu_lower;
  s.qu_upper = c.scheme.qu_upper;
  s.cap = c.scheme.cap_inverse_h ? std::optional<double>(1.0 / s.h) : c.scheme.cap;
  if (s.kind == SchemeKind::BinomialVariable && !model.sigma_band()) {
    throw ConfigError("model.epsilon", "required by scheme binomial_variable");
  }
  if (s.kind == SchemeKind::LogExact && !model.gbm_params()) {
    throw ConfigError("scheme.kind", "log_exact requires model.kind = gbm");
  }
  try {
    validate(model, s);
  } catch (const PreconditionError& e) {
    throw ConfigError("scheme.kind", e.what());
  }
  return s;
}

FunctionalSpec build_functional(const RunConfig& c) {
  const std::string kind = require(c.payoff.kind, "payoff.kind");
  const double rate = c.payoff.rate.value_or(c.model.r.value_or(0.0));
  std::size_t m = c.functional.m.value_or(1);
  try {
    Payoff p;
    if (kind == "up_in_call") {
      p = payoff_up_and_in_call(require(c.payoff.strike, "payoff.strike"), require(c.payoff.barrier, "payoff.barrier"),
                                rate);
    } else if (kind == "discrete_barrier_call") {
      m = require(c.functional.m, "functional.m");
      p = payoff_discrete_barrier_call(require(c.payoff.strike, "payoff.strike"),
                                       require(c.payoff.barrier, "payoff.barrier"), rate, m);
    } else if (kind == "hitting_time") {
      p = payoff_hitting_time();
    } else {
      const std::string t = c.payoff.terminal.value_or("value");
      if (t == "constant") {
        p = payoff_constant(require(c.payoff.value, "payoff.value"));
      } else if (t == "value") {
        p = payoff_terminal(TerminalKind::Value, 0.0, rate);
      } else {
        p = payoff_terminal(t == "call" ? TerminalKind::Call : TerminalKind::Put,
                            require(c.payoff.strike, "payoff.strike"), rate);
      }
    }
    BarrierPair band;
    if (c.functional.lower || c.functional.upper) {
      band = BarrierPair(c.functional.lower ? Barrier::constant(*c.functional.lower) : Barrier::infinite(),
                         c.functional.upper ? Barrier::constant(*c.functional.upper) : Barrier::infinite());
    }
    return FunctionalSpec::uniform(m, std::move(p), std::move(band), c.functional.coordinate.value_or(0));
  } catch (const PreconditionError& e) {
    throw ConfigError("payoff.kind", e.what());
  }
}

int cmd_price(const RunConfig& c, const Overrides& o, std::ostream& out_default, std::ostream& err) {
  const SdeModel model = build_model(c);
  const SchemeConfig scheme = build_scheme(c, model);
  const FunctionalSpec spec = build_functional(c);
  if (spec.coordinate >= model.dim_state()) throw ConfigError("functional.coordinate", "out of range for the model");
  Sink sink(c, out_default);
  std::ostream& out = sink.stream();
  const std::uint64_t seed = resolve_seed(c, o);
  const std::size_t n = resolve_paths(c, o);
  const std::size_t workers = resolve_workers(c, o);
  const bool timing = c.output.timing.value_or(true);

  const auto ui = license(c, model, scheme, spec, n, seed, workers, err);
  if (!ui) return kDiagnostic;
  EstimateOptions eo;
  eo.workers = workers;
  eo.ui_override = c.run.ui_override.value_or(false);
  if (!ui->skipped) eo.ui = &*ui;
  const Estimate e = estimate(model, scheme, spec, n, seed, eo);

  if (csv_format(c, o)) {
    out << kCsvHeader << "\n" << join(estimate_cells(e, true, timing)) << "\n";
  } else {
    out << "model    " << model.label() << "\n"
        << "scheme   " << to_string(scheme.kind) << " (h = " << num(scheme.h, false) << ")\n"
        << "payoff   " << spec.payoff.name << " (m = " << spec.m() << ")\n"
        << "paths    " << e.n_paths << " (seed " << seed << ", " << workers << " workers)\n"
        << "mean     " << num(e.mean, false) << "\n"
        << "stderr   " << num(e.std_error, false) << "\n"
        << "95% CI   [" << num(e.ci_lo, false) << ", " << num(e.ci_hi, false) << "]\n"
        << "elapsed  " << num(timing ? e.elapsed : 0.0, false) << " s\n";
  }
  return kOk;
}

int cmd_converge(const RunConfig& c, const Overrides& o, std::ostream& out_default, std::ostream& err) {
  std::vector<double> grid = c.run.h_grid;
  if (grid.size() < 3) throw ConfigError("run.h_grid", "needs at least three step sizes");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] < grid[i - 1])) throw ConfigError("run.h_grid", "must be strictly decreasing");
  }
  const FunctionalSpec spec = build_functional(c);
  const std::string kind = require(c.scheme.kind, "scheme.kind");
  const std::uint64_t seed = resolve_seed(c, o);
  const std::size_t n = resolve_paths(c, o);
  const std::size_t workers = resolve_workers(c, o);
  const bool timing = c.output.timing.value_or(true);

  std::optional<double> oracle;
  std::string note = "none";
  const std::string oracle_key = c.run.oracle.value_or("none");
  if (oracle_key == "reflection") {
    if (c.model.kind != std::optional<std::string>("gbm") || c.payoff.kind != std::optional<std::string>("up_in_call")) {
      throw ConfigError("run.oracle", "reflection oracle needs model.kind = gbm and payoff.kind = up_in_call");
    }
    oracle = up_and_in_call_reflection(require(c.model.x0, "model.x0"), c.model.r.value_or(0.0),
                                       sigma_default(c), require(c.payoff.strike, "payoff.strike"),
                                       require(c.payoff.barrier, "payoff.barrier"));
    note = "reflection quadrature";
  } else if (oracle_key != "none") {
    oracle = std::stod(oracle_key);
    note = "configured value";
  }

  ConvergenceOptions co;
  co.bias_c = c.run.bias_c.value_or(1.0);
  co.estimate.workers = workers;
  co.estimate.ui_override = c.run.ui_override.value_or(false);

  ConvergenceReport rep;
  std::optional<UiReport> ui;
  if (kind == "tangency") {
    const SamplerFactory factory = [](double h) -> PathSampler {
      return [h](RngStream) {
        return sample_function(uniform_grid(2000), [h](double s) { return 1.0 - (s - 0.5) * (s - 0.5) - h; });
      };
    };
    co.estimate.ui_override = true;  // deterministic paths
    rep = convergence_study(factory, spec, grid, n, seed, oracle, note, co);
  } else {
    const SdeModel model = build_model(c);
    RunConfig tmp = c;
    if (!tmp.scheme.h) tmp.scheme.h = grid.front();
    const SchemeConfig base = build_scheme(tmp, model);
    ui = license(c, model, base, spec, n, seed, workers, err);
    if (!ui) return kDiagnostic;
    if (!ui->skipped) co.estimate.ui = &*ui;
    if (c.scheme.cap_inverse_h) {
      const SamplerFactory factory = [&](double h) -> PathSampler {
        const SchemeConfig s = scheme_for(c, base, h);
        return [&model, s](RngStream st) { return simulate_path(model, s, st); };
      };
      rep = convergence_study(factory, spec, grid, n, seed, oracle, note, co);
    } else {
      rep = convergence_study(model, base, spec, grid, n, seed, oracle, note, co);
    }
  }

  Sink sink(c, out_default);
  std::ostream& out = sink.stream();
  const bool csv = csv_format(c, o);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rep.rows) {
    auto cells = estimate_cells(r.estimate, csv, timing);
    cells.push_back(r.error ? num(*r.error, csv) : "");
    rows.push_back(std::move(cells));
  }
  if (csv) {
    out << kCsvHeader << ",error\n";
    for (const auto& r : rows) out << join(r) << "\n";
  } else {
    print_table(out, {"h", "mean", "stderr", "ci_lo", "ci_hi", "n", "elapsed", "error"}, rows);
  }
  const char* prefix = csv ? "# " : "";
  if (rep.oracle) {
    out << prefix << "oracle " << num(*rep.oracle, csv) << " (" << rep.oracle_note << ")\n";
    if (rep.slope) out << prefix << "slope " << num(*rep.slope, csv) << "\n";
    out << prefix << "inversions " << rep.inversions << " monotone " << (rep.monotone ? "yes" : "no") << " covered "
        << (rep.covered ? "yes" : "no") << "\n";
    out << prefix << (rep.converged ? "converged" : "NOT CONVERGED") << "\n";
    return rep.converged ? kOk : kDiagnostic;
  }
  return kOk;
}

int cmd_check(const RunConfig& c, const Overrides& o, std::ostream& out_default, std::ostream&) {
  const SdeModel model = build_model(c);
  const SchemeConfig scheme = build_scheme(c, model);
  const std::uint64_t seed = resolve_seed(c, o);
  const std::size_t workers = resolve_workers(c, o);
  Sink sink(c, out_default);
  std::ostream& out = sink.stream();

  std::vector<double> ys = c.run.probe_y;
  if (ys.empty()) ys.push_back(model.initial_state()[0]);
  std::vector<double> ts = c.run.probe_t;
  if (ts.empty()) ts = {0.0, 0.5};
  std::vector<ProbePoint> probes;
  for (double y : ys) {
    for (double t : ts) {
      ProbePoint p;
      p.y.assign(model.initial_state().begin(), model.initial_state().end());
      p.y[0] = y;
      p.t = t;
      probes.push_back(std::move(p));
    }
  }
  ConsistencyOptions opts;
  opts.c = c.scheme.consistency_c.value_or(1.0);
  opts.n_draws = c.run.n_draws.value_or(1'000'000);
  opts.seed = seed;
  const ConsistencyReport rep = check_local_consistency(model, scheme, probes, opts);

  out << "local consistency: " << rep.scheme << " on " << model.label() << ", h = " << num(scheme.h, false)
      << "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : rep.probes) {
    if (!p.error.empty()) {
      rows.push_back({num(p.probe.y[0], false), num(p.probe.t, false), "-", "-", "-", "-", "ERROR: " + p.error});
      continue;
    }
    double r1 = 0, t1 = 0, r2 = 0, t2 = 0;
    for (std::size_t k = 0; k < p.r1.size(); ++k) {
      if (std::abs(p.r1[k]) >= r1) {
        r1 = std::abs(p.r1[k]);
        t1 = p.r1_tol[k];
      }
    }
    for (std::size_t k = 0; k < p.r2.size(); ++k) {
      if (std::abs(p.r2[k]) >= r2) {
        r2 = std::abs(p.r2[k]);
        t2 = p.r2_tol[k];
      }
    }
    std::string verdict = p.pass() ? "pass" : "FAIL";
    if (!p.qu) verdict += " (QU)";
    rows.push_back({num(p.probe.y[0], false), num(p.probe.t, false), num(r1, false), num(t1, false), num(r2, false),
                    num(t2, false), verdict + (p.exact ? " exact" : "")});
  }
  print_table(out, {"y", "t", "|r1|", "tol1", "|r2|", "tol2", "result"}, rows);
  out << "consistency: " << (rep.pass ? "pass" : "FAIL") << "\n";

  FunctionalSpec spec = c.payoff.kind ? build_functional(c)
                                      : FunctionalSpec::uniform(1, payoff_terminal(TerminalKind::Value, 0.0, 0.0), {},
                                                                c.functional.coordinate.value_or(0));
  std::vector<double> grid = c.run.h_grid;
  if (grid.empty()) grid = {scheme.h, scheme.h / 2, scheme.h / 4};
  try {
    const UiReport ui = run_ui(c, model, scheme, spec, grid, c.run.ui_paths.value_or(10000), seed, workers);
    print_ui(out, ui);
    return rep.pass && ui.pass ? kOk : kDiagnostic;
  } catch (const PreconditionError& e) {
    out << "ui: FAIL (" << e.what() << ")\n";
  } catch (const SimulationError& e) {
    out << "ui: FAIL (" << e.what() << ")\n";
  }
  return kDiagnostic;
}

int cmd_counterexample(const std::string& name, const Overrides& o, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = o.seed.value_or(0);
  const std::size_t workers = o.workers.value_or(default_workers());
  if (name == "tangency") {
    const TangencyReport r = counterexample_tangency();
    out << "x(s) = 1 - (s - 1/2)^2, upper barrier 1\n";
    out << "tau(x) = " << num(r.tau, false) << "  class " << to_string(r.partition) << "\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [h, t] : r.tau_h) rows.push_back({num(h, false), num(t, false)});
    print_table(out, {"h", "tau(x - h)"}, rows);
    return kOk;
  }
  if (name == "bessel") {
    const double grid[] = {0.0625, 0.015625, 0.00390625};
    const BesselReport r = counterexample_bessel(grid, o.n_paths.value_or(20000), seed, workers);
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : r.capped) {
      rows.push_back({num(row.h, false), num(row.cap, false), num(row.mean, false), num(row.std_error, false)});
    }
    rows.push_back({num(r.uncapped.h, false), "none", num(r.uncapped.mean, false), num(r.uncapped.std_error, false)});
    print_table(out, {"h", "cap", "mean", "stderr"}, rows);
    out << "oracle E[X(1)] = " << num(r.oracle_mean, false) << "  E[1/X(1)] = " << num(r.oracle_reciprocal, false)
        << "\n";
    out << "capped mean within 3 se of 1: " << (r.capped_mean_near_one ? "yes" : "no") << "\n"
        << "oracle below 1 by > 5 se:     " << (r.oracle_below_one ? "yes" : "no") << "\n"
        << "uncapped above oracle:        " << (r.uncapped_above_oracle ? "yes" : "no") << "\n";
    const bool ok = r.capped_mean_near_one && r.oracle_below_one;
    if (!ok) err << "bessel: expected pattern not observed\n";
    return ok ? kOk : kDiagnostic;
  }
  if (name == "strong") {
    const std::size_t grid[] = {100, 1000, 10000};
    const StrongReport r = counterexample_strong(grid, o.n_paths.value_or(200), 32, seed, workers);
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : r.rows) {
      rows.push_back({std::to_string(row.n), num(row.scaled_error, false), num(row.std_error, false),
                      num(row.reference, false)});
    }
    print_table(out, {"N", "sqrt(N) sup err", "stderr", "sqrt(2 log N)"}, rows);
    out << "strictly increasing: " << (r.strictly_increasing ? "yes" : "no") << "\n";
    return r.strictly_increasing ? kOk : kDiagnostic;
  }
  throw ConfigError("counterexample", "unknown name '" + name + "' (expected tangency, bessel or strong)");
}

StepPath read_path_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("path", "cannot open '" + path + "'");
  std::vector<double> ts, xs;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double t = 0, x = 0;
    if (!(ss >> t >> x)) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw ConfigError("path", "malformed row in '" + path + "': " + line);
    }
    first = false;
    ts.push_back(t);
    xs.push_back(x);
  }
  try {
    return StepPath(std::move(ts), std::move(xs));
  } catch (const PreconditionError& e) {
    throw ConfigError("path", path + ": " + e.what());
  }
}

int cmd_skorohod_dist(const std::string& path_a, const std::string& path_b, std::size_t budget, std::ostream& out,
                      std::ostream&) {
  const StepPath a = read_path_csv(path_a);
  const StepPath b = read_path_csv(path_b);
  const SkorohodMatch m = skorohod_match(a, b, budget);
  out << num(m.distance, true) << "\n";
  return kOk;
}

int run_config_command(const std::string& command, const std::string& config_path, const Overrides& o,
                       std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = load_config(config_path);
    if (command == "price") return cmd_price(c, o, out, err);
    if (command == "converge") return cmd_converge(c, o, out, err);
    if (command == "check") return cmd_check(c, o, out, err);
    err << "unknown command '" << command << "'\n";
    return kConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const PolicyError& e) {
    err << "policy error: " << e.what() << "\n";
    return kDiagnostic;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << " (t = " << e.time() << ", stream " << e.stream_id() << ")\n";
    return kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace pathfunc::cli
