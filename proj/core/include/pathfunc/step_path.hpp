#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pathfunc {

/// Right-continuous piecewise-constant path on [0,1].
///
/// The value at t is the state recorded at the greatest grid time <= t.
/// States are stored row-major: state i occupies values()[i*dim, (i+1)*dim).
class StepPath {
 public:
  StepPath() = default;

  /// Validates: times strictly increasing from 0 to 1, one finite state per time.
  StepPath(std::vector<double> times, std::vector<double> values, std::size_t dim = 1);

  std::size_t size() const noexcept { return times_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool is_scalar() const noexcept { return dim_ == 1; }

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> state(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  /// Scalar value at grid index i (coordinate 0 for vector paths).
  double value(std::size_t i) const noexcept { return values_[i * dim_]; }

  /// Index of the grid time covering t, i.e. max{j : times[j] <= t}. Requires t in [0,1].
  std::size_t index_at(double t) const;

  /// Scalar path of coordinate k on the same grid.
  StepPath coordinate(std::size_t k) const;

  bool operator==(const StepPath&) const = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t dim_ = 1;
};

/// Samples f on the grid and returns the step interpolant.
template <typename F>
StepPath sample_function(std::vector<double> grid, F&& f) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid) values.push_back(f(t));
  return StepPath(std::move(grid), std::move(values));
}

/// Uniform grid {0, 1/n, ..., 1} with n intervals.
std::vector<double> uniform_grid(std::size_t n);

}  // namespace pathfunc
