#include "pathfunc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pathfunc/error.hpp"

namespace pathfunc {

namespace {

constexpr double kFinalSlack = 1e-7;

struct Scratch {
  std::vector<double> b;
  std::vector<double> s;
  std::vector<double> z;

  explicit Scratch(const SdeModel& m)
      : b(m.dim_state()), s(m.dim_state() * m.dim_noise()), z(m.dim_noise()) {}
};

// Length of the step starting at t with nominal length `nominal`; the last
// step absorbs the remainder so the grid ends exactly at 1.
double step_length(double t, double nominal, bool& final) {
  const double remaining = 1.0 - t;
  if (remaining <= nominal * (1.0 + kFinalSlack)) {
    final = true;
    return remaining;
  }
  final = false;
  return nominal;
}

[[noreturn]] void fail(const std::string& what, std::span<const double> y, double t) {
  throw SimulationError(what, std::vector<double>(y.begin(), y.end()), t);
}

void check_finite(std::span<const double> v, const char* what, std::span<const double> y, double t) {
  for (double x : v) {
    if (!std::isfinite(x)) fail(std::string("non-finite ") + what, y, t);
  }
}

void require_scalar(const SdeModel& m, const char* scheme) {
  if (m.dim_state() != 1 || m.dim_noise() != 1) {
    throw PreconditionError(std::string(scheme) + ": requires d = d1 = 1, model '" + m.label() +
                            "' has d=" + std::to_string(m.dim_state()) +
                            ", d1=" + std::to_string(m.dim_noise()));
  }
}

double kernel_euler(const SdeModel& m, std::span<const double> y, double t, double h,
                    NoiseSource& noise, Scratch& sc, std::span<double> out, bool& final) {
  const std::size_t d = m.dim_state();
  const std::size_t d1 = m.dim_noise();
  m.drift(y, t, sc.b);
  m.diffusion(y, t, sc.s);
  check_finite(sc.b, "drift", y, t);
  check_finite(sc.s, "diffusion", y, t);
  const double dt = step_length(t, h, final);
  const double sq = std::sqrt(dt);
  for (std::size_t j = 0; j < d1; ++j) sc.z[j] = noise.normal(j);
  for (std::size_t i = 0; i < d; ++i) {
    const double* row = sc.s.data() + i * d1;
    double mix = row[0] * sc.z[0];
    for (std::size_t j = 1; j < d1; ++j) mix += row[j] * sc.z[j];
    out[i] = y[i] + sc.b[i] * dt + sq * mix;
  }
  return dt;
}

double kernel_binomial_fixed(const SdeModel& m, std::span<const double> y, double t, double h,
                             NoiseSource& noise, Scratch& sc, std::span<double> out, bool& final) {
  m.drift(y, t, sc.b);
  m.diffusion(y, t, sc.s);
  check_finite(sc.b, "drift", y, t);
  check_finite(sc.s, "diffusion", y, t);
  const double dt = step_length(t, h, final);
  out[0] = y[0] + sc.b[0] * dt + noise.sign() * sc.s[0] * std::sqrt(dt);
  return dt;
}

double kernel_binomial_variable(const SdeModel& m, std::span<const double> y, double t, double h,
                                NoiseSource& noise, Scratch& sc, std::span<double> out,
                                bool& final) {
  if (!m.sigma_band()) {
    throw PreconditionError("binomial_variable: model '" + m.label() + "' declares no sigma band");
  }
  const double eps = *m.sigma_band();
  m.drift(y, t, sc.b);
  m.diffusion(y, t, sc.s);
  check_finite(sc.b, "drift", y, t);
  check_finite(sc.s, "diffusion", y, t);
  const double sigma = std::abs(sc.s[0]);
  if (!(std::min(sigma, 1.0 / sigma) > eps)) {
    throw PreconditionError("binomial_variable: |sigma| ^ |1/sigma| > " + std::to_string(eps) +
                            " violated at y=" + std::to_string(y[0]) + ", t=" + std::to_string(t) +
                            " (sigma=" + std::to_string(sc.s[0]) + ")");
  }
  const double dt = step_length(t, h / (sigma * sigma), final);
  const double jump = final ? sigma * std::sqrt(dt) : std::sqrt(h);
  out[0] = y[0] + sc.b[0] * dt + noise.sign() * jump;
  return dt;
}

double kernel_log_exact(const SdeModel& m, std::span<const double> y, double t, double h,
                        NoiseSource& noise, Scratch&, std::span<double> out, bool& final) {
  if (!m.gbm_params()) {
    throw PreconditionError("log_exact: model '" + m.label() + "' is not a GBM");
  }
  const auto [r, sigma] = *m.gbm_params();
  const double dt = step_length(t, h, final);
  out[0] = y[0] * std::exp((r - 0.5 * sigma * sigma) * dt + sigma * std::sqrt(dt) * noise.normal(0));
  return dt;
}

using Kernel = double (*)(const SdeModel&, std::span<const double>, double, double, NoiseSource&,
                          Scratch&, std::span<double>, bool&);

Kernel kernel_for(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Euler: return kernel_euler;
    case SchemeKind::BinomialFixed: return kernel_binomial_fixed;
    case SchemeKind::BinomialVariable: return kernel_binomial_variable;
    case SchemeKind::LogExact: return kernel_log_exact;
  }
  return kernel_euler;
}

void check_kind(SchemeKind kind, const SdeModel& m) {
  switch (kind) {
    case SchemeKind::Euler: break;
    case SchemeKind::BinomialFixed: require_scalar(m, "binomial_fixed"); break;
    case SchemeKind::BinomialVariable: require_scalar(m, "binomial_variable"); break;
    case SchemeKind::LogExact: require_scalar(m, "log_exact"); break;
  }
}

ChainStep run_kernel(SchemeKind kind, const SdeModel& m, std::span<const double> y, double t,
                     double h, NoiseSource& noise) {
  check_kind(kind, m);
  if (y.size() != m.dim_state()) throw PreconditionError("step: state has wrong dimension");
  if (!(h > 0.0)) throw PreconditionError("step: h must be positive");
  if (!(t >= 0.0 && t < 1.0)) throw PreconditionError("step: t must lie in [0,1)");
  Scratch sc(m);
  ChainStep step;
  step.y_next.resize(m.dim_state());
  step.dt = kernel_for(kind)(m, y, t, h, noise, sc, step.y_next, step.final);
  step.t_next = step.final ? 1.0 : t + step.dt;
  step.dy.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) step.dy[i] = step.y_next[i] - y[i];
  check_finite(step.y_next, "state", y, t);
  return step;
}

}  // namespace

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Euler: return "euler";
    case SchemeKind::BinomialFixed: return "binomial_fixed";
    case SchemeKind::BinomialVariable: return "binomial_variable";
    case SchemeKind::LogExact: return "log_exact";
  }
  return "?";
}

std::optional<SchemeKind> scheme_kind_from_string(std::string_view name) {
  for (SchemeKind k : {SchemeKind::Euler, SchemeKind::BinomialFixed, SchemeKind::BinomialVariable,
                       SchemeKind::LogExact}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::pair<double, double> qu_bounds(const SdeModel& model, const SchemeConfig& config) {
  double lo = 1.0, hi = 1.0;
  if (config.kind == SchemeKind::BinomialVariable && model.sigma_band()) {
    const double eps = *model.sigma_band();
    lo = eps * eps;
    hi = 1.0 / (eps * eps);
  }
  return {config.qu_lower.value_or(lo), config.qu_upper.value_or(hi)};
}

void validate(const SdeModel& model, const SchemeConfig& config) {
  if (!(config.h > 0.0) || !std::isfinite(config.h)) {
    throw PreconditionError("scheme: h must be positive and finite");
  }
  check_kind(config.kind, model);
  if (config.kind == SchemeKind::BinomialVariable && !model.sigma_band()) {
    throw PreconditionError("binomial_variable: model '" + model.label() +
                            "' must declare epsilon with |sigma| ^ |1/sigma| > epsilon");
  }
  if (config.kind == SchemeKind::LogExact && !model.gbm_params()) {
    throw PreconditionError("log_exact: model '" + model.label() + "' is not a GBM");
  }
  const auto [lo, hi] = qu_bounds(model, config);
  if (!(lo > 0.0 && lo <= hi)) throw PreconditionError("scheme: invalid quasi-uniformity bounds");
  if (config.cap && !(*config.cap > 0.0)) throw PreconditionError("scheme: cap must be positive");
}

ChainStep euler_step(const SdeModel& model, std::span<const double> y, double t, double h,
                     NoiseSource& noise) {
  return run_kernel(SchemeKind::Euler, model, y, t, h, noise);
}

ChainStep binomial_fixed_step(const SdeModel& model, std::span<const double> y, double t, double h,
                              NoiseSource& noise) {
  return run_kernel(SchemeKind::BinomialFixed, model, y, t, h, noise);
}

ChainStep binomial_variable_step(const SdeModel& model, std::span<const double> y, double t,
                                 double h, NoiseSource& noise) {
  return run_kernel(SchemeKind::BinomialVariable, model, y, t, h, noise);
}

ChainStep log_exact_step(const SdeModel& model, std::span<const double> y, double t, double h,
                         NoiseSource& noise) {
  return run_kernel(SchemeKind::LogExact, model, y, t, h, noise);
}

ChainStep take_step(SchemeKind kind, const SdeModel& model, std::span<const double> y, double t,
                    double h, NoiseSource& noise) {
  return run_kernel(kind, model, y, t, h, noise);
}

StepPath simulate_path(const SdeModel& model, const SchemeConfig& config, NoiseSource& noise) {
  validate(model, config);
  const std::size_t d = model.dim_state();
  const double h = config.h;
  const auto [qu_lo, qu_hi] = qu_bounds(model, config);
  const bool fixed_grid = config.kind != SchemeKind::BinomialVariable;
  const Kernel kernel = kernel_for(config.kind);

  std::vector<double> times;
  std::vector<double> values;
  if (fixed_grid) {
    const auto n = static_cast<std::size_t>(std::ceil(1.0 / h)) + 2;
    times.reserve(n);
    values.reserve(n * d);
  }
  std::vector<double> y(model.initial_state().begin(), model.initial_state().end());
  std::vector<double> next(d);
  Scratch sc(model);

  times.push_back(0.0);
  values.insert(values.end(), y.begin(), y.end());
  double t = 0.0;
  std::size_t n = 0;
  bool final = false;
  while (!final) {
    const double dt = kernel(model, y, t, h, noise, sc, next, final);
    check_finite(next, "state", y, t);
    if (!final && !(dt >= qu_lo * h * (1.0 - 1e-12) && dt <= qu_hi * h * (1.0 + 1e-12))) {
      fail("quasi-uniformity violated: dt=" + std::to_string(dt), y, t);
    }
    if (config.cap) {
      for (double& v : next) v = std::min(v, *config.cap);
    }
    ++n;
    // Fixed grids use n*h directly so rounding does not accumulate over many steps.
    t = final ? 1.0 : (fixed_grid ? static_cast<double>(n) * h : t + dt);
    y.swap(next);
    times.push_back(t);
    values.insert(values.end(), y.begin(), y.end());
  }
  return StepPath(std::move(times), std::move(values), d);
}

StepPath simulate_path(const SdeModel& model, const SchemeConfig& config, RngStream stream) {
  StreamNoise noise(stream);
  return simulate_path(model, config, noise);
}

}  // namespace pathfunc
