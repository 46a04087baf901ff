#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pathfunc/consistency.hpp"
#include "pathfunc/error.hpp"
#include "pathfunc/models.hpp"
#include "pathfunc/schemes.hpp"

using namespace pathfunc;

namespace {

std::vector<ProbePoint> gbm_probes() {
  std::vector<ProbePoint> out;
  for (double y : {0.5, 1.0, 2.0}) {
    for (double t : {0.0, 0.5}) out.push_back({{y}, t});
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(EulerStep, Examples) {
  const SdeModel frozen = constant_coefficients(0.0, 0.0, 2.0);
  StreamNoise noise(RngStream{1, 1});
  const double y[] = {2.0};
  EXPECT_EQ(euler_step(frozen, y, 0.0, 0.01, noise).y_next[0], 2.0);

  FixedNoise zero(0.0, 1.0);
  const double one[] = {1.0};
  const ChainStep s = euler_step(gbm(0.1, 0.3, 1.0), one, 0.0, 0.01, zero);
  EXPECT_DOUBLE_EQ(s.y_next[0], 1.0 + 0.01 * 0.1);
  EXPECT_EQ(s.dt, 0.01);
  EXPECT_FALSE(s.final);
}

TEST(EulerStep, FinalStepLandsOnOne) {
  FixedNoise zero(0.0, 1.0);
  const double one[] = {1.0};
  const ChainStep s = euler_step(gbm(0.0, 0.3, 1.0), one, 0.97, 0.05, zero);
  EXPECT_TRUE(s.final);
  EXPECT_EQ(s.t_next, 1.0);
  EXPECT_NEAR(s.dt, 0.03, 1e-15);
}

TEST(EulerStep, NonFiniteCoefficientRaises) {
  const SdeModel m = bessel3(1.0);
  FixedNoise zero(0.0, 1.0);
  const double y[] = {0.0};
  try {
    euler_step(m, y, 0.25, 0.01, zero);
    FAIL() << "expected SimulationError";
  } catch (const SimulationError& e) {
    EXPECT_EQ(e.state(), std::vector<double>{0.0});
    EXPECT_EQ(e.time(), 0.25);
  }
}

TEST(BinomialFixed, TwoPointMoments) {
  const SdeModel m = gbm(0.1, 0.3, 1.0);
  const double y[] = {1.5};
  FixedNoise up(0.0, 1.0), down(0.0, -1.0);
  const double h = 0.01;
  const ChainStep a = binomial_fixed_step(m, y, 0.0, h, up);
  const ChainStep b = binomial_fixed_step(m, y, 0.0, h, down);
  const double mean = 0.5 * (a.dy[0] + b.dy[0]);
  const double var = 0.5 * (a.dy[0] * a.dy[0] + b.dy[0] * b.dy[0]) - mean * mean;
  EXPECT_NEAR(mean, 0.15 * h, 1e-15);
  EXPECT_NEAR(var, 0.45 * 0.45 * h, 1e-15);
  const SdeModel flat = gbm(0.1, 0.0, 1.0);
  EXPECT_EQ(binomial_fixed_step(flat, y, 0.0, h, up).y_next[0], binomial_fixed_step(flat, y, 0.0, h, down).y_next[0]);
}

TEST(BinomialVariable, UnitVolatilityMatchesFixed) {
  const SdeModel m = constant_coefficients(0.2, 1.0, 0.0).with_sigma_band(0.5);
  const double y[] = {0.3};
  for (double sgn : {1.0, -1.0}) {
    FixedNoise a(0.0, sgn), b(0.0, sgn);
    const ChainStep v = binomial_variable_step(m, y, 0.1, 0.01, a);
    const ChainStep f = binomial_fixed_step(m, y, 0.1, 0.01, b);
    EXPECT_DOUBLE_EQ(v.dt, f.dt);
    EXPECT_DOUBLE_EQ(v.y_next[0], f.y_next[0]);
  }
}

TEST(BinomialVariable, StepLengthAndBand) {
  const SdeModel m = gbm(0.0, 0.5, 1.0).with_sigma_band(0.1);
  const double y[] = {1.0};  // sigma = 0.5
  FixedNoise up(0.0, 1.0);
  const ChainStep s = binomial_variable_step(m, y, 0.0, 0.001, up);
  EXPECT_DOUBLE_EQ(s.dt, 0.004);
  EXPECT_NEAR(s.dy[0], std::sqrt(0.001), 1e-15);
  const double tiny[] = {0.1};  // sigma = 0.05 < eps
  EXPECT_THROW(binomial_variable_step(m, tiny, 0.0, 0.001, up), PreconditionError);
  EXPECT_THROW(binomial_variable_step(gbm(0.0, 0.5, 1.0), y, 0.0, 0.001, up), PreconditionError);
  const auto [lo, hi] = qu_bounds(m, SchemeConfig{SchemeKind::BinomialVariable, 0.001});
  EXPECT_DOUBLE_EQ(lo, 0.01);
  EXPECT_DOUBLE_EQ(hi, 100.0);
}

TEST(LogExact, PositiveAndExactWithZeroNoise) {
  const SdeModel m = gbm(0.1, 0.3, 1.0);
  FixedNoise zero(0.0, 1.0);
  const double y[] = {1.0};
  const ChainStep s = log_exact_step(m, y, 0.0, 0.5, zero);
  EXPECT_NEAR(s.y_next[0], std::exp((0.1 - 0.045) * 0.5), 1e-15);
  EXPECT_THROW(log_exact_step(bessel3(1.0), y, 0.0, 0.5, zero), PreconditionError);
}

TEST(SimulatePath, ZeroDynamicsGrid) {
  const SdeModel m = constant_coefficients(0.0, 0.0, 4.0);
  for (double h : {0.1, 0.3, 1.0 / 64, 0.07}) {
    const StepPath p = simulate_path(m, SchemeConfig{SchemeKind::Euler, h}, RngStream{3, 0});
    EXPECT_EQ(p.size(), static_cast<std::size_t>(std::ceil(1.0 / h - 1e-9)) + 1) << h;
    EXPECT_EQ(p.times().back(), 1.0);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_EQ(p.value(i), 4.0);
  }
}

TEST(SimulatePath, Deterministic) {
  const SdeModel m = gbm(0.1, 0.3, 0.8);
  for (SchemeKind k : {SchemeKind::Euler, SchemeKind::BinomialFixed, SchemeKind::LogExact}) {
    const SchemeConfig cfg{k, 0.01};
    EXPECT_EQ(simulate_path(m, cfg, RngStream{42, 7}), simulate_path(m, cfg, RngStream{42, 7}));
    EXPECT_FALSE(simulate_path(m, cfg, RngStream{42, 7}) == simulate_path(m, cfg, RngStream{42, 8}));
  }
}

TEST(SimulatePath, CapApplied) {
  const SdeModel m = constant_coefficients(5.0, 0.0, 0.0);
  SchemeConfig cfg{SchemeKind::Euler, 0.1};
  cfg.cap = 2.0;
  const StepPath p = simulate_path(m, cfg, RngStream{1, 1});
  EXPECT_EQ(p.value(p.size() - 1), 2.0);
  EXPECT_DOUBLE_EQ(p.value(1), 0.5);
}

TEST(SimulatePath, QuasiUniformityViolationRaises) {
  const SdeModel m = gbm(0.0, 0.5, 1.0).with_sigma_band(0.1);
  SchemeConfig cfg{SchemeKind::BinomialVariable, 0.001};
  cfg.qu_lower = 1.0;
  cfg.qu_upper = 1.0;  // dt = 4h at sigma = 0.5
  EXPECT_THROW(simulate_path(m, cfg, RngStream{1, 1}), SimulationError);
}

TEST(SimulatePath, SchemeKindNames) {
  for (SchemeKind k : {SchemeKind::Euler, SchemeKind::BinomialFixed, SchemeKind::BinomialVariable, SchemeKind::LogExact}) {
    EXPECT_EQ(scheme_kind_from_string(to_string(k)), k);
  }
  EXPECT_FALSE(scheme_kind_from_string("milstein"));
}

TEST(Consistency, EulerOnGbm) {
  ConsistencyOptions o;
  o.n_draws = 200000;
  o.seed = 1;
  const auto probes = gbm_probes();
  const auto rep = check_local_consistency(gbm(0.1, 0.3, 1.0), SchemeConfig{SchemeKind::Euler, 0.001}, probes, o);
  EXPECT_TRUE(rep.pass);
  for (const auto& p : rep.probes) EXPECT_FALSE(p.exact);
}

TEST(Consistency, BinomialFixedIsExact) {
  ConsistencyOptions o;
  const auto probes = gbm_probes();
  const auto rep =
      check_local_consistency(gbm(0.1, 0.3, 1.0), SchemeConfig{SchemeKind::BinomialFixed, 0.001}, probes, o);
  EXPECT_TRUE(rep.pass);
  for (const auto& p : rep.probes) {
    EXPECT_TRUE(p.exact);
    EXPECT_LE(max_abs(p.r1), 1e-12);
    EXPECT_LE(max_abs(p.r2), 1e-12);
  }
}

TEST(Consistency, BinomialVariablePassesAndReportsBandViolation) {
  ConsistencyOptions o;
  const auto probes = gbm_probes();
  const SdeModel m = gbm(0.1, 0.3, 1.0).with_sigma_band(0.1);
  EXPECT_TRUE(check_local_consistency(m, SchemeConfig{SchemeKind::BinomialVariable, 0.001}, probes, o).pass);

  const std::vector<ProbePoint> bad{{{0.2}, 0.0}};  // sigma = 0.06 < eps
  const auto rep = check_local_consistency(m, SchemeConfig{SchemeKind::BinomialVariable, 0.001}, bad, o);
  EXPECT_FALSE(rep.pass);
  EXPECT_NE(rep.probes[0].error.find("binomial_variable"), std::string::npos);
}

TEST(Consistency, SabotagedDriftFails) {
  StepKernel k = kernel_for(SchemeKind::BinomialFixed);
  const auto base = k.step;
  k.name = "doubled drift";
  k.step = [base](const SdeModel& m, std::span<const double> y, double t, double h, NoiseSource& n) {
    ChainStep s = base(m, y, t, h, n);
    const double extra = m.drift(y[0], t) * s.dt;
    s.dy[0] += extra;
    s.y_next[0] += extra;
    return s;
  };
  const SdeModel m = gbm(1.0, 0.3, 1.0);
  const std::vector<ProbePoint> probes{{{2.0}, 0.0}};
  const auto rep = check_local_consistency(m, SchemeConfig{SchemeKind::BinomialFixed, 0.001}, k, probes, {});
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.probes[0].r1[0], 2.0, 1e-9);  // r1 = b(y, t)
}
