#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pathfunc/barrier.hpp"
#include "pathfunc/path_ops.hpp"
#include "pathfunc/step_path.hpp"

namespace pathfunc {

/// |g| <= bound everywhere.
struct Bounded {
  double bound = 0.0;
};
/// |g(x)| <= a |x| + b.
struct Linear {
  double a = 1.0;
  double b = 0.0;
};
using GrowthClass = std::variant<Bounded, Linear>;

/// g : R^{4m+1} -> R. Arguments are laid out as (z1, z2, z3, z4, tau), each
/// z of length m, so the 1-based x_{2m} is the last entry of z2 and x_{4m}
/// the last entry of z4.
struct Payoff {
  using Fn = std::function<double(std::span<const double>)>;

  std::string name;
  Fn g;
  GrowthClass growth = Bounded{0.0};
  /// Distance from the arguments to the payoff's discontinuity set; empty if g is continuous.
  Fn locus_distance;
};

Payoff payoff_constant(double c);

/// e^{-r} (x_{2m} - strike)^+ 1[x_{4m} >= barrier_level]: knock-in on the running maximum.
Payoff payoff_up_and_in_call(double strike, double barrier_level, double r);

/// e^{-r} (x_{2m} - strike)^+ 1[max_{m < i <= 2m} x_i >= barrier_level]: knock-in on the m monitored values.
Payoff payoff_discrete_barrier_call(double strike, double barrier_level, double r, std::size_t m);

enum class TerminalKind { Value, Call, Put };
/// Payoff of x_{2m} alone: the terminal value itself, or a vanilla call/put on it, discounted by e^{-r}.
Payoff payoff_terminal(TerminalKind kind, double strike, double r);

/// g = tau (the last argument).
Payoff payoff_hitting_time();

struct FunctionalSpec {
  FunctionalSpec(SampleVector nu1, SampleVector nu2, SampleVector nu3, SampleVector nu4,
                 Payoff payoff, BarrierPair barriers = {}, std::size_t coordinate = 0);

  /// All four sampling vectors equal to (1/m, ..., 1).
  static FunctionalSpec uniform(std::size_t m, Payoff payoff, BarrierPair barriers = {},
                                std::size_t coordinate = 0);

  std::size_t m() const noexcept { return nu1.size(); }

  SampleVector nu1, nu2, nu3, nu4;
  Payoff payoff;
  BarrierPair barriers;
  std::size_t coordinate = 0;  ///< state coordinate the functional reads on vector paths
};

struct PathObservables {
  std::vector<double> z1, z2, z3, z4;
  double tau = 1.0;

  /// Flattened (z1, z2, z3, z4, tau), length 4m+1.
  std::vector<double> arguments() const;
};

PathObservables observe(const StepPath& path, const FunctionalSpec& spec);

/// g evaluated on the observables of one path. Throws EvaluationError on a non-finite result.
double evaluate(const StepPath& path, const FunctionalSpec& spec);

/// Fraction of paths whose observables lie within delta of the payoff's
/// discontinuity set. 0 if the payoff declares none.
double discontinuity_mass_estimate(const FunctionalSpec& spec, std::span<const StepPath> paths,
                                   double delta);

}  // namespace pathfunc
