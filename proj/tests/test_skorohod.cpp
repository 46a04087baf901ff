#include <gtest/gtest.h>

#include <cmath>

#include "pathfunc/path_ops.hpp"
#include "pathfunc/skorohod.hpp"

using namespace pathfunc;

namespace {

StepPath indicator(double at) { return StepPath({0.0, at, 1.0}, {0.0, 1.0, 1.0}); }

// Smallest objective over single-knot time changes lambda(s0) = u0 on a fine lattice.
double exhaustive_single_knot(const StepPath& x, const StepPath& y, std::size_t n) {
  double best = skorohod_objective(x, y, TimeChange());
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      const double s = static_cast<double>(i) / static_cast<double>(n);
      const double u = static_cast<double>(j) / static_cast<double>(n);
      best = std::min(best, skorohod_objective(x, y, TimeChange({{s, u}})));
    }
  }
  return best;
}

}  // namespace

TEST(TimeChange, Basics) {
  const TimeChange id;
  EXPECT_EQ(id(0.3), 0.3);
  EXPECT_EQ(id.distance_from_identity(), 0.0);
  const TimeChange l({{0.5, 0.6}});
  EXPECT_DOUBLE_EQ(l(0.25), 0.3);
  EXPECT_DOUBLE_EQ(l.inverse(0.6), 0.5);
  EXPECT_DOUBLE_EQ(l.inverted()(0.6), 0.5);
  EXPECT_DOUBLE_EQ(l.distance_from_identity(), 0.1);
  EXPECT_THROW(TimeChange({{0.5, 0.6}, {0.6, 0.55}}), std::exception);
  EXPECT_THROW(TimeChange({{0.0, 0.1}}), std::exception);
}

TEST(Skorohod, EqualPathsAreAtZero) {
  const StepPath x({0.0, 0.3, 1.0}, {1.0, -2.0, 0.5});
  EXPECT_EQ(skorohod_distance_approx(x, x), 0.0);
}

TEST(Skorohod, ShiftedIndicatorMatchesExhaustiveSearch) {
  const double delta = 0.01;
  const StepPath x = indicator(0.5), y = indicator(0.5 + delta);
  const double d = skorohod_distance_approx(x, y);
  EXPECT_NEAR(d, delta, 1e-12);
  EXPECT_NEAR(exhaustive_single_knot(x, y, 400), delta, 1e-12);
  // The sup norm alone sees the full jump.
  EXPECT_EQ(skorohod_objective(x, y, TimeChange()), 1.0);
}

TEST(Skorohod, BoundedBySupNorm) {
  const StepPath x({0.0, 0.2, 0.7, 1.0}, {0.0, 1.0, -1.0, 0.5});
  const StepPath y({0.0, 0.25, 0.5, 1.0}, {0.1, 0.8, 0.0, 0.4});
  EXPECT_LE(skorohod_distance_approx(x, y), skorohod_objective(x, y, TimeChange()));
  const SkorohodMatch m = skorohod_match(x, y);
  EXPECT_DOUBLE_EQ(m.distance, skorohod_objective(x, y, m.witness));
}

TEST(ContinuityProbeMax, Examples) {
  const StepPath x({0.0, 0.3, 0.6, 1.0}, {0.0, 1.0, 0.2, 0.7});
  const std::vector<StepPath> same{x, x};
  const auto r0 = continuity_probe_max(x, same);
  EXPECT_TRUE(r0.holds);
  for (const auto& [a, b] : r0.distances) {
    EXPECT_EQ(a, 0.0);
    EXPECT_EQ(b, 0.0);
  }
  std::vector<StepPath> shifted;
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> v(x.values().begin(), x.values().end());
    for (double& e : v) e += 1.0 / n;
    shifted.emplace_back(std::vector<double>(x.times().begin(), x.times().end()), v);
  }
  const auto r1 = continuity_probe_max(x, shifted);
  EXPECT_TRUE(r1.holds);
  for (const auto& [a, b] : r1.distances) EXPECT_NEAR(a, b, 1e-12);
}

TEST(ContinuityProbeHitting, Cases) {
  const BarrierPair band(Barrier::infinite(), Barrier::constant(1.0));
  const StepPath cross = sample_function(uniform_grid(1000), [](double s) { return 2.0 * s; });
  std::vector<StepPath> perturbed;
  for (int n = 1; n <= 6; ++n) {
    const double e = std::pow(0.3, n);
    perturbed.push_back(sample_function(uniform_grid(1000), [e](double s) { return 2.0 * s + e; }));
  }
  const auto r = continuity_probe_hitting(cross, band, perturbed);
  EXPECT_EQ(r.partition, CPartition::C1);
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.converges);

  const StepPath inside({0.0, 1.0}, {0.0, 0.1});
  const std::vector<StepPath> small{StepPath({0.0, 1.0}, {0.01, 0.1}), StepPath({0.0, 1.0}, {0.001, 0.1}),
                                    StepPath({0.0, 1.0}, {0.0001, 0.1})};
  const auto c3 = continuity_probe_hitting(inside, band, small);
  EXPECT_EQ(c3.partition, CPartition::C3);
  for (double e : c3.tau_errors) EXPECT_EQ(e, 0.0);
  EXPECT_TRUE(c3.converges);

  const StepPath tangent = sample_function(uniform_grid(2000), [](double s) { return 1.0 - (s - 0.5) * (s - 0.5); });
  const auto c4 = continuity_probe_hitting(tangent, band, small);
  EXPECT_FALSE(c4.applicable);
  EXPECT_EQ(c4.note, "not applicable - C4");
}
