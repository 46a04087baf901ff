#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathfunc/barrier.hpp"
#include "pathfunc/path_ops.hpp"
#include "pathfunc/step_path.hpp"

namespace pathfunc {

/// Strictly increasing piecewise-linear bijection of [0,1] with lambda(0)=0, lambda(1)=1.
class TimeChange {
 public:
  /// Identity.
  TimeChange();
  /// Interior knots (s, lambda(s)); the endpoints are added automatically.
  explicit TimeChange(std::vector<std::pair<double, double>> interior_knots);

  double operator()(double s) const;
  double inverse(double u) const;
  /// sup_s |lambda(s) - s|, attained at a knot.
  double distance_from_identity() const;
  TimeChange inverted() const;

  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// sup_t |x(lambda(t)) - y(t)| for scalar step paths.
double sup_distance_under(const StepPath& x, const StepPath& y, const TimeChange& lambda);

/// max(||lambda - I||, ||x o lambda - y||).
double skorohod_objective(const StepPath& x, const StepPath& y, const TimeChange& lambda);

struct SkorohodMatch {
  double distance = 0.0;
  TimeChange witness;  ///< x o witness ~ y
};

/// Best member of a finite family of time changes: the identity plus
/// monotone matchings of same-sign jump times of y to jump times of x within a
/// threshold, using at most `budget` interior knots. An upper bound on the
/// Skorohod distance, never above the sup-norm distance on the merged grid.
SkorohodMatch skorohod_match(const StepPath& x, const StepPath& y, std::size_t budget = 16);

double skorohod_distance_approx(const StepPath& x, const StepPath& y, std::size_t budget = 16);

struct MaxProbeReport {
  std::vector<std::pair<double, double>> distances;  ///< (d(x_n, x), d(M x_n, M x))
  bool holds = true;
};

/// Checks d(M x_n, M x) <= d(x_n, x) + tol for every perturbation.
MaxProbeReport continuity_probe_max(const StepPath& x, std::span<const StepPath> perturbations,
                                    double tol = 1e-12, std::size_t budget = 16);

struct HittingProbeReport {
  CPartition partition = CPartition::C3;
  bool applicable = false;  ///< false on C4 inputs, where hitting times need not be continuous
  std::string note;
  double tau = 1.0;
  std::vector<double> tau_errors;  ///< |pi(x_n) - pi(x)|
  bool converges = false;
};

/// On C1-C3 inputs, checks that |pi(x_n) - pi(x)| is nonincreasing over the
/// last three perturbations and ends below tol.
HittingProbeReport continuity_probe_hitting(const StepPath& x, const BarrierPair& barriers,
                                            std::span<const StepPath> perturbations,
                                            double tol = 1e-2);

}  // namespace pathfunc
