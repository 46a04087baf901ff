#include "pathfunc/step_path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pathfunc/error.hpp"

namespace pathfunc {

StepPath::StepPath(std::vector<double> times, std::vector<double> values, std::size_t dim)
    : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) throw PreconditionError("StepPath: dimension must be positive");
  if (times_.empty()) throw PreconditionError("StepPath: empty grid");
  if (times_.front() != 0.0) throw PreconditionError("StepPath: first grid time must be 0");
  if (times_.back() != 1.0) throw PreconditionError("StepPath: last grid time must be 1");
  if (values_.size() != times_.size() * dim_) {
    throw PreconditionError("StepPath: expected " + std::to_string(times_.size() * dim_) +
                            " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw PreconditionError("StepPath: grid times not strictly increasing at index " +
                              std::to_string(i));
    }
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("StepPath: non-finite value");
  }
}

std::size_t StepPath::index_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("StepPath: evaluation time " + std::to_string(t) + " outside [0,1]");
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

StepPath StepPath::coordinate(std::size_t k) const {
  if (k >= dim_) throw PreconditionError("StepPath: coordinate out of range");
  std::vector<double> out(times_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) out[i] = values_[i * dim_ + k];
  return StepPath(times_, std::move(out), 1);
}

std::vector<double> uniform_grid(std::size_t n) {
  if (n == 0) throw PreconditionError("uniform_grid: need at least one interval");
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n);
  grid[n] = 1.0;
  return grid;
}

}  // namespace pathfunc
