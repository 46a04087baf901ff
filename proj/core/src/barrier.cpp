#include "pathfunc/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pathfunc/error.hpp"

namespace pathfunc {

Barrier Barrier::constant(double level) {
  if (!std::isfinite(level)) throw PreconditionError("Barrier: constant level must be finite");
  return Barrier(Constant{level});
}

Barrier Barrier::sampled(std::vector<double> times, std::vector<double> levels) {
  if (times.empty() || times.size() != levels.size()) {
    throw PreconditionError("Barrier: sampled barrier needs matching non-empty times and levels");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(levels[i])) {
      throw PreconditionError("Barrier: sampled barrier has non-finite entries");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw PreconditionError("Barrier: sample times must be strictly increasing");
    }
  }
  return Barrier(Sampled{std::move(times), std::move(levels)});
}

double Barrier::level(double t) const {
  if (const auto* c = std::get_if<Constant>(&rep_)) return c->level;
  if (const auto* s = std::get_if<Sampled>(&rep_)) {
    const auto& ts = s->times;
    const auto& ls = s->levels;
    if (t <= ts.front()) return ls.front();
    if (t >= ts.back()) return ls.back();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t j = static_cast<std::size_t>(it - ts.begin());
    double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
    return ls[j - 1] + w * (ls[j] - ls[j - 1]);
  }
  throw PreconditionError("Barrier: infinite barrier has no finite level");
}

BarrierPair::BarrierPair() : lower_(Barrier::infinite()), upper_(Barrier::infinite()) {}

BarrierPair::BarrierPair(Barrier lower, Barrier upper, std::size_t reference_points)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (reference_points < 2) reference_points = 2;
  for (std::size_t i = 0; i < reference_points; ++i) {
    double t = static_cast<double>(i) / static_cast<double>(reference_points - 1);
    if (!(this->lower(t) < this->upper(t))) {
      throw PreconditionError("BarrierPair: lower barrier not below upper barrier at t=" +
                              std::to_string(t));
    }
  }
  // Knots of sampled barriers are where violations of a piecewise-linear pair can hide.
  for (const Barrier* b : {&lower_, &upper_}) {
    if (const auto* s = std::get_if<Barrier::Sampled>(&b->representation())) {
      for (double t : s->times) {
        if (t < 0.0 || t > 1.0) continue;
        if (!(this->lower(t) < this->upper(t))) {
          throw PreconditionError("BarrierPair: lower barrier not below upper barrier at t=" +
                                  std::to_string(t));
        }
      }
    }
  }
}

double BarrierPair::lower(double t) const {
  return lower_.is_infinite() ? -std::numeric_limits<double>::infinity() : lower_.level(t);
}

double BarrierPair::upper(double t) const {
  return upper_.is_infinite() ? std::numeric_limits<double>::infinity() : upper_.level(t);
}

}  // namespace pathfunc
