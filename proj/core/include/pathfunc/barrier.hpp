#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace pathfunc {

/// A continuous barrier level over [0,1]: a constant, a piecewise-linear
/// interpolant of samples, or absent (infinite).
class Barrier {
 public:
  struct Constant {
    double level;
  };
  struct Sampled {
    std::vector<double> times;
    std::vector<double> levels;
  };
  struct Infinite {};

  static Barrier constant(double level);
  /// Linear interpolation between samples; flat extrapolation outside the sampled range.
  static Barrier sampled(std::vector<double> times, std::vector<double> levels);
  static Barrier infinite() { return Barrier(Infinite{}); }

  bool is_infinite() const noexcept { return std::holds_alternative<Infinite>(rep_); }

  /// Finite level at t. Not meaningful for infinite barriers; use BarrierPair.
  double level(double t) const;

  const std::variant<Constant, Sampled, Infinite>& representation() const noexcept { return rep_; }

 private:
  explicit Barrier(std::variant<Constant, Sampled, Infinite> rep) : rep_(std::move(rep)) {}
  std::variant<Constant, Sampled, Infinite> rep_;
};

/// Lower barrier alpha and upper barrier beta with alpha(t) < beta(t).
class BarrierPair {
 public:
  /// Both sides infinite: the band is the whole line and no path ever exits.
  BarrierPair();
  /// Checks alpha < beta on a uniform reference grid of `reference_points` points.
  BarrierPair(Barrier lower, Barrier upper, std::size_t reference_points = 1001);

  double lower(double t) const;  ///< -inf when absent
  double upper(double t) const;  ///< +inf when absent
  bool inside(double t, double x) const { return lower(t) < x && x < upper(t); }

  const Barrier& lower_barrier() const noexcept { return lower_; }
  const Barrier& upper_barrier() const noexcept { return upper_; }

 private:
  Barrier lower_;
  Barrier upper_;
};

}  // namespace pathfunc
