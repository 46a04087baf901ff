#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pathfunc/barrier.hpp"
#include "pathfunc/step_path.hpp"

namespace pathfunc {

/// m nondecreasing sampling instants in [0,1].
class SampleVector {
 public:
  explicit SampleVector(std::vector<double> entries);

  /// (1/m, 2/m, ..., 1)
  static SampleVector uniform(std::size_t m);
  /// m copies of t.
  static SampleVector constant(std::size_t m, double t);

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }

  /// Entries multiplied by s in [0,1]; the result stays a valid sample vector.
  SampleVector scaled(double s) const;

  bool operator==(const SampleVector&) const = default;

 private:
  std::vector<double> entries_;
};

/// Scalar value of the path at t (coordinate 0 for vector paths).
double eval(const StepPath& path, double t);
/// Full state at t.
std::span<const double> eval_state(const StepPath& path, double t);

/// Prefix maximum x*(t) = max_{s <= t} x(s) on the same grid. Scalar paths only.
StepPath running_max(const StepPath& path);

/// (x(nu_1), ..., x(nu_m)) for a scalar path.
std::vector<double> project(const StepPath& path, const SampleVector& nu);

/// First grid time at which the path is outside the open band (alpha, beta); 1 if never.
double hitting_time(const StepPath& path, const BarrierPair& barriers);

enum class CPartition { C1, C2, C3, C4 };

std::string_view to_string(CPartition c);

/// Which cell of the C1..C4 partition the path falls in.
///
/// C3: never exits before 1. C1/C2: touches beta/alpha at tau within `tol`
/// and is strictly beyond it at tau or at the next grid time. C4: the rest
/// (touching without crossing, the tangency case).
/// Default tol is 1e-12 * max(1, max|x|).
CPartition classify_c_partition(const StepPath& path, const BarrierPair& barriers,
                                 std::optional<double> tol = std::nullopt);

}  // namespace pathfunc
