#include "pathfunc/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pathfunc/error.hpp"

namespace pathfunc {

namespace {

std::size_t block_size(std::span<const double> x) {
  if (x.size() < 5 || (x.size() - 1) % 4 != 0) {
    throw EvaluationError("payoff: expected 4m+1 arguments, got " + std::to_string(x.size()));
  }
  return (x.size() - 1) / 4;
}

double terminal(std::span<const double> x) { return x[2 * block_size(x) - 1]; }
double terminal_max(std::span<const double> x) { return x[4 * block_size(x) - 1]; }

double monitored_max(std::span<const double> x, std::size_t m) {
  if (block_size(x) != m) {
    throw EvaluationError("discrete barrier payoff built for m=" + std::to_string(m) +
                          " received m=" + std::to_string(block_size(x)));
  }
  return *std::max_element(x.begin() + static_cast<std::ptrdiff_t>(m),
                           x.begin() + static_cast<std::ptrdiff_t>(2 * m));
}

}  // namespace

Payoff payoff_constant(double c) {
  Payoff p;
  p.name = "constant";
  p.g = [c](std::span<const double>) { return c; };
  p.growth = Bounded{std::abs(c)};
  return p;
}

Payoff payoff_up_and_in_call(double strike, double barrier_level, double r) {
  if (!(barrier_level > 0.0)) throw PreconditionError("up_in_call: barrier level must be positive");
  const double disc = std::exp(-r);
  Payoff p;
  p.name = "up_in_call";
  p.g = [=](std::span<const double> x) {
    return terminal_max(x) >= barrier_level ? disc * std::max(terminal(x) - strike, 0.0) : 0.0;
  };
  p.growth = Linear{disc, disc * std::abs(strike)};
  p.locus_distance = [=](std::span<const double> x) { return std::abs(terminal_max(x) - barrier_level); };
  return p;
}

Payoff payoff_discrete_barrier_call(double strike, double barrier_level, double r, std::size_t m) {
  if (m == 0) throw PreconditionError("discrete_barrier_call: m must be positive");
  if (!(barrier_level > 0.0)) throw PreconditionError("discrete_barrier_call: barrier level must be positive");
  const double disc = std::exp(-r);
  Payoff p;
  p.name = "discrete_barrier_call";
  p.g = [=](std::span<const double> x) {
    return monitored_max(x, m) >= barrier_level ? disc * std::max(terminal(x) - strike, 0.0) : 0.0;
  };
  p.growth = Linear{disc, disc * std::abs(strike)};
  p.locus_distance = [=](std::span<const double> x) { return std::abs(monitored_max(x, m) - barrier_level); };
  return p;
}

Payoff payoff_terminal(TerminalKind kind, double strike, double r) {
  const double disc = std::exp(-r);
  Payoff p;
  switch (kind) {
    case TerminalKind::Value:
      p.name = "terminal_value";
      p.g = [disc](std::span<const double> x) { return disc * terminal(x); };
      p.growth = Linear{disc, 0.0};
      break;
    case TerminalKind::Call:
      p.name = "terminal_call";
      p.g = [=](std::span<const double> x) { return disc * std::max(terminal(x) - strike, 0.0); };
      p.growth = Linear{disc, disc * std::abs(strike)};
      break;
    case TerminalKind::Put:
      // Bounded by the strike only when the underlying is nonnegative, which
      // Euler does not guarantee.
      p.name = "terminal_put";
      p.g = [=](std::span<const double> x) { return disc * std::max(strike - terminal(x), 0.0); };
      p.growth = Linear{disc, disc * std::abs(strike)};
      break;
  }
  return p;
}

Payoff payoff_hitting_time() {
  Payoff p;
  p.name = "hitting_time";
  p.g = [](std::span<const double> x) { return x.back(); };
  p.growth = Bounded{1.0};
  return p;
}

FunctionalSpec::FunctionalSpec(SampleVector n1, SampleVector n2, SampleVector n3, SampleVector n4,
                               Payoff pay, BarrierPair bars, std::size_t coord)
    : nu1(std::move(n1)),
      nu2(std::move(n2)),
      nu3(std::move(n3)),
      nu4(std::move(n4)),
      payoff(std::move(pay)),
      barriers(std::move(bars)),
      coordinate(coord) {
  const std::size_t m = nu1.size();
  if (nu2.size() != m || nu3.size() != m || nu4.size() != m) {
    throw PreconditionError("FunctionalSpec: sampling vectors must share length m");
  }
  if (!payoff.g) throw PreconditionError("FunctionalSpec: payoff function missing");
}

FunctionalSpec FunctionalSpec::uniform(std::size_t m, Payoff payoff, BarrierPair barriers,
                                       std::size_t coordinate) {
  const SampleVector nu = SampleVector::uniform(m);
  return FunctionalSpec(nu, nu, nu, nu, std::move(payoff), std::move(barriers), coordinate);
}

std::vector<double> PathObservables::arguments() const {
  std::vector<double> x;
  x.reserve(z1.size() * 4 + 1);
  x.insert(x.end(), z1.begin(), z1.end());
  x.insert(x.end(), z2.begin(), z2.end());
  x.insert(x.end(), z3.begin(), z3.end());
  x.insert(x.end(), z4.begin(), z4.end());
  x.push_back(tau);
  return x;
}

namespace {

PathObservables observe_scalar(const StepPath& path, const FunctionalSpec& spec) {
  PathObservables obs;
  obs.tau = hitting_time(path, spec.barriers);
  const StepPath peak = running_max(path);
  obs.z1 = project(path, spec.nu1.scaled(obs.tau));
  obs.z2 = project(path, spec.nu2);
  obs.z3 = project(peak, spec.nu3.scaled(obs.tau));
  obs.z4 = project(peak, spec.nu4);
  return obs;
}

}  // namespace

PathObservables observe(const StepPath& path, const FunctionalSpec& spec) {
  if (!path.is_scalar()) {
    if (spec.coordinate >= path.dim()) throw PreconditionError("observe: coordinate out of range");
    return observe_scalar(path.coordinate(spec.coordinate), spec);
  }
  if (spec.coordinate != 0) throw PreconditionError("observe: coordinate out of range for scalar path");
  return observe_scalar(path, spec);
}

double evaluate(const StepPath& path, const FunctionalSpec& spec) {
  const PathObservables obs = observe(path, spec);
  const std::vector<double> x = obs.arguments();
  const double v = spec.payoff.g(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "payoff '" << spec.payoff.name << "' returned " << v << " at tau=" << obs.tau
       << ", arguments=(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    throw EvaluationError(os.str());
  }
  return v;
}

double discontinuity_mass_estimate(const FunctionalSpec& spec, std::span<const StepPath> paths,
                                   double delta) {
  if (!spec.payoff.locus_distance || paths.empty()) return 0.0;
  std::size_t near = 0;
  for (const StepPath& p : paths) {
    if (spec.payoff.locus_distance(observe(p, spec).arguments()) < delta) ++near;
  }
  return static_cast<double>(near) / static_cast<double>(paths.size());
}

}  // namespace pathfunc
