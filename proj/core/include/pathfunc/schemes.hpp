#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pathfunc/models.hpp"
#include "pathfunc/rng.hpp"
#include "pathfunc/step_path.hpp"

namespace pathfunc {

enum class SchemeKind {
  Euler,             ///< Y + b h + sigma sqrt(h) N
  BinomialFixed,     ///< Y + b h +- sigma sqrt(h), dt = h
  BinomialVariable,  ///< Y + b dt +- sqrt(h), dt = h / sigma^2
  LogExact,          ///< exact GBM transition in log space (oracle comparisons)
};

std::string_view to_string(SchemeKind kind);
std::optional<SchemeKind> scheme_kind_from_string(std::string_view name);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::Euler;
  double h = 0.01;
  /// Quasi-uniformity: every non-final step satisfies qu_lower*h <= dt <= qu_upper*h.
  /// Unset bounds are derived from the scheme (1,1) or, for BinomialVariable,
  /// from the model's sigma band (eps^2, 1/eps^2).
  std::optional<double> qu_lower;
  std::optional<double> qu_upper;
  /// State truncation y -> min(y, cap) applied after every step.
  std::optional<double> cap;

  bool operator==(const SchemeConfig&) const = default;
};

/// Throws PreconditionError if the configuration cannot drive the model.
void validate(const SdeModel& model, const SchemeConfig& config);

/// Effective (lower, upper) quasi-uniformity multipliers.
std::pair<double, double> qu_bounds(const SdeModel& model, const SchemeConfig& config);

struct ChainStep {
  double t_next = 0.0;
  std::vector<double> y_next;
  double dt = 0.0;
  std::vector<double> dy;
  bool final = false;  ///< truncated step landing on t = 1
};

/// Every kernel takes a nominal step h and truncates the last step so that the
/// chain lands exactly on t = 1.
ChainStep euler_step(const SdeModel& model, std::span<const double> y, double t, double h,
                     NoiseSource& noise);
ChainStep binomial_fixed_step(const SdeModel& model, std::span<const double> y, double t, double h,
                              NoiseSource& noise);
ChainStep binomial_variable_step(const SdeModel& model, std::span<const double> y, double t,
                                 double h, NoiseSource& noise);
ChainStep log_exact_step(const SdeModel& model, std::span<const double> y, double t, double h,
                         NoiseSource& noise);

ChainStep take_step(SchemeKind kind, const SdeModel& model, std::span<const double> y, double t,
                    double h, NoiseSource& noise);

/// Iterates the configured kernel from (y0, 0) to t = 1 and returns the
/// piecewise-constant interpolation on the realized grid.
StepPath simulate_path(const SdeModel& model, const SchemeConfig& config, NoiseSource& noise);
StepPath simulate_path(const SdeModel& model, const SchemeConfig& config, RngStream stream);

}  // namespace pathfunc
