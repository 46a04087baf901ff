// Randomized invariant checks. Every property runs kCases cases drawn from a
// generator seeded by kMasterSeed and the property name, so failures replay.
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string_view>

#include "pathfunc/pathfunc.hpp"

using namespace pathfunc;

namespace {

constexpr std::uint64_t kMasterSeed = 0x5eed2024;
constexpr int kCases = 200;

std::mt19937_64 rng_for(std::string_view property) {
  std::uint64_t h = kMasterSeed;
  for (char c : property) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return std::mt19937_64(h);
}

double uniform(std::mt19937_64& g, double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
std::size_t pick(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

std::vector<double> random_grid(std::mt19937_64& g, std::size_t max_interior = 30) {
  std::set<double> s{0.0, 1.0};
  const std::size_t k = pick(g, 0, max_interior);
  while (s.size() < k + 2) s.insert(uniform(g, 0.0, 1.0));
  return {s.begin(), s.end()};
}

StepPath random_path(std::mt19937_64& g, std::size_t max_interior = 30) {
  std::vector<double> t = random_grid(g, max_interior);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v;
  for (std::size_t i = 0; i < t.size(); ++i) v.push_back(n(g));
  return StepPath(std::move(t), std::move(v));
}

/// Same step function on a grid with extra redundant points.
StepPath refine(const StepPath& p, std::mt19937_64& g) {
  std::set<double> s(p.times().begin(), p.times().end());
  const std::size_t extra = pick(g, 1, 20);
  for (std::size_t i = 0; i < extra; ++i) s.insert(uniform(g, 0.0, 1.0));
  std::vector<double> t(s.begin(), s.end()), v;
  for (double x : t) v.push_back(eval(p, x));
  return StepPath(std::move(t), std::move(v));
}

std::vector<double> merged_grid(const StepPath& a, const StepPath& b) {
  std::set<double> s(a.times().begin(), a.times().end());
  s.insert(b.times().begin(), b.times().end());
  return {s.begin(), s.end()};
}

double sup_distance(const StepPath& a, const StepPath& b) {
  double d = 0.0;
  for (double t : merged_grid(a, b)) d = std::max(d, std::abs(eval(a, t) - eval(b, t)));
  return d;
}

SampleVector random_nu(std::mt19937_64& g, std::size_t m) {
  std::vector<double> e;
  for (std::size_t i = 0; i < m; ++i) e.push_back(uniform(g, 0.0, 1.0));
  std::sort(e.begin(), e.end());
  return SampleVector(e);
}

SdeModel random_gbm(std::mt19937_64& g) { return gbm(uniform(g, -0.5, 0.5), uniform(g, 0.0, 1.0), uniform(g, 0.1, 2.0)); }

FunctionalSpec terminal_value() { return FunctionalSpec::uniform(1, payoff_terminal(TerminalKind::Value, 0.0, 0.0)); }

}  // namespace

// ---------------------------------------------------------------- path_core

TEST(PathCoreProperty, RunningMaxMonotoneDominatingIdempotent) {
  auto g = rng_for("running_max");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g);
    const StepPath m = running_max(x);
    ASSERT_EQ(m.size(), x.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      ASSERT_GE(m.value(i), x.value(i));
      if (i > 0) ASSERT_GE(m.value(i), m.value(i - 1));
    }
    ASSERT_EQ(running_max(m), m);
  }
}

TEST(PathCoreProperty, RunningMaxNonexpansiveInSupNorm) {
  auto g = rng_for("running_max_lip");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g), y = random_path(g);
    ASSERT_LE(sup_distance(running_max(x), running_max(y)), sup_distance(x, y) + 1e-15);
  }
}

TEST(PathCoreProperty, ProjectInvariantUnderRefinement) {
  auto g = rng_for("project_refine");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g);
    const SampleVector nu = random_nu(g, pick(g, 1, 12));
    ASSERT_EQ(project(x, nu), project(refine(x, g), nu));
  }
}

TEST(PathCoreProperty, HittingTimeMonotoneInBarrierWidth) {
  auto g = rng_for("hitting_widen");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g);
    std::vector<double> knots = random_grid(g, 5), lo, hi, lo2, hi2;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const double mid = uniform(g, -0.5, 0.5);
      lo.push_back(mid - uniform(g, 0.1, 2.0));
      hi.push_back(mid + uniform(g, 0.1, 2.0));
      lo2.push_back(lo.back() - uniform(g, 0.0, 1.0));
      hi2.push_back(hi.back() + uniform(g, 0.0, 1.0));
    }
    const BarrierPair narrow(Barrier::sampled(knots, lo), Barrier::sampled(knots, hi));
    const BarrierPair wide(Barrier::sampled(knots, lo2), Barrier::sampled(knots, hi2));
    const BarrierPair upper_only(Barrier::infinite(), Barrier::sampled(knots, hi2));
    ASSERT_LE(hitting_time(x, narrow), hitting_time(x, wide));
    ASSERT_LE(hitting_time(x, wide), hitting_time(x, upper_only));
  }
}

TEST(PathCoreProperty, InfiniteBandNeverExits) {
  auto g = rng_for("hitting_infinite");
  for (int c = 0; c < kCases; ++c) {
    StepPath x = random_path(g);
    ASSERT_EQ(hitting_time(x, BarrierPair()), 1.0);
    ASSERT_EQ(classify_c_partition(x, BarrierPair()), CPartition::C3);
  }
}

// ---------------------------------------------------------------- models

TEST(ModelsProperty, GbmLogExactStaysPositive) {
  auto g = rng_for("gbm_positive");
  for (int c = 0; c < kCases; ++c) {
    const SdeModel m = gbm(uniform(g, -1.0, 1.0), uniform(g, 0.0, 3.0), uniform(g, 0.01, 5.0));
    const StepPath p = simulate_path(m, SchemeConfig{SchemeKind::LogExact, uniform(g, 0.005, 0.5)}, RngStream{g(), 0});
    for (std::size_t i = 0; i < p.size(); ++i) ASSERT_GT(p.value(i), 0.0);
  }
}

TEST(ModelsProperty, DegenerateStochVolIsGbm) {
  auto g = rng_for("stoch_vol_gbm");
  for (int c = 0; c < kCases; ++c) {
    const double r = uniform(g, -0.2, 0.2), s = uniform(g, 0.05, 0.8), x0 = uniform(g, 0.2, 2.0);
    StochVolParams p;
    p.r = r;
    p.sigma_of_y = [s](double) { return s; };
    p.mu = [](double) { return 0.0; };
    p.b_vol = [](double) { return 0.0; };
    p.rho = uniform(g, -1.0, 1.0);
    p.x0 = x0;
    p.y0 = uniform(g, 0.5, 2.0);
    const SchemeConfig cfg{SchemeKind::Euler, uniform(g, 0.01, 0.2)};
    const RngStream stream{g(), pick(g, 0, 1000)};
    const StepPath a = simulate_path(stoch_vol(p), cfg, stream).coordinate(0);
    const StepPath b = simulate_path(gbm(r, s, x0), cfg, stream);
    ASSERT_EQ(a, b);
  }
}

// ---------------------------------------------------------------- schemes

TEST(SchemesProperty, Deterministic) {
  auto g = rng_for("scheme_determinism");
  const SchemeKind kinds[] = {SchemeKind::Euler, SchemeKind::BinomialFixed, SchemeKind::BinomialVariable,
                              SchemeKind::LogExact};
  for (int c = 0; c < kCases; ++c) {
    const SdeModel m = gbm(uniform(g, -0.5, 0.5), uniform(g, 0.2, 1.0), uniform(g, 0.5, 2.0)).with_sigma_band(0.01);
    SchemeConfig cfg{kinds[pick(g, 0, 3)], uniform(g, 0.001, 0.1)};
    if (cfg.kind == SchemeKind::BinomialVariable) cfg.h = uniform(g, 1e-4, 1e-3);
    const RngStream s{g(), g()};
    try {
      const StepPath a = simulate_path(m, cfg, s);
      ASSERT_EQ(a, simulate_path(m, cfg, s));
    } catch (const PreconditionError&) {
      // binomial_variable may wander outside the sigma band; the failure itself must repeat
      ASSERT_THROW(simulate_path(m, cfg, s), PreconditionError);
    }
  }
}

TEST(SchemesProperty, QuasiUniformSteps) {
  auto g = rng_for("scheme_qu");
  for (int c = 0; c < kCases; ++c) {
    // sigma(y) = s within the band (eps, 1/eps) everywhere on the path.
    const double s = uniform(g, 0.3, 3.0), eps = 0.25;
    const SdeModel m = constant_coefficients(uniform(g, -1.0, 1.0), s, 0.0).with_sigma_band(eps);
    const bool variable = c % 2 == 0;
    const SchemeConfig cfg{variable ? SchemeKind::BinomialVariable : SchemeKind::Euler, uniform(g, 1e-3, 0.05)};
    const auto [lo, hi] = qu_bounds(m, cfg);
    const StepPath p = simulate_path(m, cfg, RngStream{g(), 0});
    const auto t = p.times();
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const double dt = t[i] - t[i - 1];
      ASSERT_GE(dt, lo * cfg.h * (1 - 1e-9));
      ASSERT_LE(dt, hi * cfg.h * (1 + 1e-9));
    }
    ASSERT_LE(t.back() - t[t.size() - 2], hi * cfg.h * (1 + 1e-9));
    // Grid size bound implied by quasi-uniformity.
    ASSERT_LE(static_cast<double>(t.size() - 1), 1.0 / (lo * cfg.h) + 1.0);
  }
}

TEST(SchemesProperty, SecondMomentsBoundedAcrossH) {
  auto g = rng_for("second_moment");
  const double hs[] = {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128, 1.0 / 256};
  const double ts[] = {0.25, 0.5, 1.0};
  for (int c = 0; c < kCases; ++c) {
    const double r = uniform(g, -0.5, 0.5), s = uniform(g, 0.0, 1.0), x0 = uniform(g, 0.1, 2.0);
    const SdeModel m = gbm(r, s, x0);
    // Exact Euler second moment is x0^2 (1 + (2r + s^2) h + r^2 h^2)^{t/h} <= bound.
    const double bound = x0 * x0 * std::exp(2 * std::abs(r) + s * s + r * r);
    const std::uint64_t seed = g();
    const std::size_t n = c == 0 ? 10000 : 1000;
    for (double h : hs) {
      std::vector<double> second(3, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const StepPath p = simulate_path(m, SchemeConfig{SchemeKind::Euler, h}, RngStream{seed, i});
        for (std::size_t k = 0; k < 3; ++k) second[k] += std::pow(eval(p, ts[k]), 2);
      }
      for (double v : second) ASSERT_LE(v / static_cast<double>(n), 1.5 * bound) << "case " << c << " h " << h;
    }
  }
}

TEST(SchemesProperty, StrongErrorGrowsWithN) {
  auto g = rng_for("strong");
  const std::size_t grid[] = {100, 1000, 10000};
  for (int c = 0; c < kCases; ++c) {
    const StrongReport r = counterexample_strong(grid, 40, 4, g(), 1);
    ASSERT_TRUE(r.strictly_increasing) << "case " << c;
  }
}

// ---------------------------------------------------------------- functionals

TEST(FunctionalsProperty, EvaluateInvariantUnderRefinement) {
  auto g = rng_for("evaluate_refine");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g);
    const std::size_t m = pick(g, 1, 6);
    const BarrierPair band(Barrier::constant(uniform(g, -3, -0.5)), Barrier::constant(uniform(g, 0.5, 3)));
    const FunctionalSpec spec(random_nu(g, m), random_nu(g, m), random_nu(g, m), random_nu(g, m),
                              payoff_up_and_in_call(uniform(g, -1, 1), uniform(g, 0.1, 2), 0.05), band);
    ASSERT_EQ(evaluate(x, spec), evaluate(refine(x, g), spec));
    ASSERT_EQ(observe(x, spec).arguments(), observe(refine(x, g), spec).arguments());
  }
}

TEST(FunctionalsProperty, BoundedPayoffsStayBounded) {
  auto g = rng_for("bounded");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g);
    const double k = uniform(g, -2, 2);
    const Payoff p = c % 2 ? payoff_constant(k) : payoff_hitting_time();
    const double bound = std::get<Bounded>(p.growth).bound;
    const BarrierPair band(Barrier::constant(uniform(g, -2, -0.1)), Barrier::constant(uniform(g, 0.1, 2)));
    ASSERT_LE(std::abs(evaluate(x, FunctionalSpec::uniform(pick(g, 1, 5), p, band))), bound);
  }
}

TEST(FunctionalsProperty, BarrierPayoffsMonotoneInTrigger) {
  auto g = rng_for("trigger_monotone");
  for (int c = 0; c < kCases; ++c) {
    const std::size_t m = pick(g, 1, 12);
    const double strike = uniform(g, 0, 1), level = uniform(g, 0.5, 1.5);
    const Payoff dbc = payoff_discrete_barrier_call(strike, level, 0.1, m);
    const Payoff uic = payoff_up_and_in_call(strike, level, 0.1);
    std::vector<double> x(4 * m + 1);
    for (double& e : x) e = uniform(g, 0, 2);
    std::vector<double> raised = x;
    // Raise one monitored value (never the terminal value the call is written on).
    const std::size_t i = m + pick(g, 0, m - 1);
    if (i != 2 * m - 1) raised[i] += uniform(g, 0, 1);
    raised[4 * m - 1] += uniform(g, 0, 1);
    ASSERT_LE(dbc.g(x), dbc.g(raised));
    ASSERT_LE(uic.g(x), uic.g(raised));
  }
}

TEST(FunctionalsProperty, InfiniteBarriersDependOnlyOnZ2Z4) {
  auto g = rng_for("z2z4");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g);
    const std::size_t m = pick(g, 1, 6);
    const SampleVector nu2 = random_nu(g, m), nu4 = random_nu(g, m);
    const Payoff p = payoff_up_and_in_call(0.1, 0.5, 0.0);
    const FunctionalSpec a(random_nu(g, m), nu2, random_nu(g, m), nu4, p);
    const FunctionalSpec b(random_nu(g, m), nu2, random_nu(g, m), nu4, p);
    ASSERT_EQ(observe(x, a).tau, 1.0);
    ASSERT_EQ(evaluate(x, a), evaluate(x, b));
  }
}

// ---------------------------------------------------------------- estimator

TEST(EstimatorProperty, ReproducibleAndWorkerInvariant) {
  auto g = rng_for("estimator_repro");
  for (int c = 0; c < kCases; ++c) {
    const SdeModel m = random_gbm(g);
    const SchemeConfig cfg{SchemeKind::Euler, uniform(g, 0.05, 0.3)};
    const std::size_t n = pick(g, 2, 1200);
    const std::uint64_t seed = g();
    EstimateOptions o;
    o.ui_override = true;
    o.workers = pick(g, 1, 8);
    const Estimate a = estimate(m, cfg, terminal_value(), n, seed, o);
    const Estimate b = estimate(m, cfg, terminal_value(), n, seed, o);
    ASSERT_EQ(a.mean, b.mean);
    ASSERT_EQ(a.std_error, b.std_error);
    o.workers = 1;
    const Estimate one = estimate(m, cfg, terminal_value(), n, seed, o);
    ASSERT_LE(std::abs(one.mean - a.mean), 1e-12 * std::abs(a.mean));
    ASSERT_LE(std::abs(one.std_error - a.std_error), 1e-12 * a.std_error);
  }
}

TEST(EstimatorProperty, StderrHalvesWhenPathsQuadruple) {
  auto g = rng_for("stderr_scaling");
  for (int c = 0; c < kCases; ++c) {
    const SdeModel m = constant_coefficients(uniform(g, -1, 1), uniform(g, 0.1, 2), uniform(g, -1, 1));
    const SchemeConfig cfg{SchemeKind::Euler, 0.25};
    EstimateOptions o;
    o.ui_override = true;
    const std::size_t n = 1000;
    const Estimate a = estimate(m, cfg, terminal_value(), n, g(), o);
    const Estimate b = estimate(m, cfg, terminal_value(), 4 * n, g(), o);
    const double ratio = a.std_error / b.std_error;
    ASSERT_GE(ratio, 2.0 * 0.8);
    ASSERT_LE(ratio, 2.0 * 1.2);
  }
}

TEST(EstimatorProperty, BoundedMeanWithinBound) {
  auto g = rng_for("bounded_mean");
  for (int c = 0; c < kCases; ++c) {
    const SdeModel m = random_gbm(g);
    const double k = uniform(g, -3, 3);
    const Payoff p = c % 2 ? payoff_constant(k) : payoff_hitting_time();
    const double bound = std::get<Bounded>(p.growth).bound;
    const BarrierPair band(Barrier::constant(0.5 * m.initial_state()[0]), Barrier::constant(1.5 * m.initial_state()[0]));
    const Estimate e = estimate(m, SchemeConfig{SchemeKind::Euler, 0.1}, FunctionalSpec::uniform(1, p, band),
                                pick(g, 2, 300), g());
    ASSERT_LE(std::abs(e.mean), bound);
    ASSERT_LE(e.ci_lo, e.mean);
    ASSERT_LE(e.mean, e.ci_hi);
  }
}

// ---------------------------------------------------------------- skorohod

TEST(SkorohodProperty, SymmetricAndZeroIffEqual) {
  auto g = rng_for("skorohod_symmetric");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g, 10);
    StepPath y = random_path(g, 10);
    if (c % 4 == 0) y = refine(x, g);
    const double dxy = skorohod_distance_approx(x, y), dyx = skorohod_distance_approx(y, x);
    ASSERT_NEAR(dxy, dyx, 1e-12);
    ASSERT_GE(dxy, 0.0);
    ASSERT_EQ(dxy <= 1e-12, sup_distance(x, y) <= 1e-12);
    ASSERT_LE(dxy, sup_distance(x, y) + 1e-12);
  }
}

TEST(SkorohodProperty, TriangleInequalityWithinTolerance) {
  auto g = rng_for("skorohod_triangle");
  const double tol = 1e-9;
  for (int c = 0; c < kCases; ++c) {
    // Nearby paths: shared jump structure with jittered times and heights.
    const StepPath x = random_path(g, 8);
    auto jitter = [&g](const StepPath& p) {
      std::vector<double> t(p.times().begin(), p.times().end()), v(p.values().begin(), p.values().end());
      for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double room = 0.3 * std::min(t[i] - t[i - 1], t[i + 1] - t[i]);
        t[i] += uniform(g, -room, room);
      }
      for (double& e : v) e += uniform(g, -0.05, 0.05);
      return StepPath(t, v);
    };
    const StepPath y = jitter(x), z = jitter(y);
    const double dxz = skorohod_distance_approx(x, z);
    ASSERT_LE(dxz, skorohod_distance_approx(x, y) + skorohod_distance_approx(y, z) + 2 * tol) << "case " << c;
  }
}

TEST(SkorohodProperty, ProjectionContinuity) {
  auto g = rng_for("skorohod_projection");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g, 10);
    std::vector<double> t(x.times().begin(), x.times().end()), v(x.values().begin(), x.values().end());
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const double room = 0.4 * std::min(t[i] - t[i - 1], t[i + 1] - t[i]);
      t[i] += uniform(g, -room, room);
    }
    for (double& e : v) e += uniform(g, -0.01, 0.01);
    const StepPath y(t, v);
    const SkorohodMatch match = skorohod_match(x, y);
    const double d = match.distance;
    // Sample instants away from the jumps of x.
    std::vector<double> e;
    const std::size_t m = pick(g, 1, 6);
    while (e.size() < m) {
      const double s = uniform(g, 0.0, 1.0);
      bool clear = true;
      for (double jt : x.times()) clear = clear && std::abs(jt - s) > 1e-9;
      if (clear) e.push_back(s);
    }
    std::sort(e.begin(), e.end());
    const SampleVector nu(e);
    const auto px = project(x, nu), py = project(y, nu);
    for (std::size_t i = 0; i < m; ++i) {
      // Oscillation of x over [nu_i - d, nu_i + d].
      double lo = eval(x, nu[i]), hi = lo;
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (std::abs(x.times()[k] - nu[i]) <= d) {
          lo = std::min(lo, x.value(k));
          hi = std::max(hi, x.value(k));
        }
      }
      lo = std::min(lo, eval(x, std::max(0.0, nu[i] - d)));
      hi = std::max(hi, eval(x, std::max(0.0, nu[i] - d)));
      ASSERT_LE(std::abs(py[i] - px[i]), static_cast<double>(m) * (d + (hi - lo)) + 1e-12) << "case " << c;
    }
  }
}

TEST(SkorohodProperty, RunningMaxNonexpansiveUnderTimeChange) {
  auto g = rng_for("skorohod_max");
  for (int c = 0; c < kCases; ++c) {
    const StepPath x = random_path(g, 10);
    std::vector<StepPath> perturbations;
    for (int n = 1; n <= 4; ++n) {
      std::vector<double> v(x.values().begin(), x.values().end());
      for (double& e : v) e += uniform(g, -1.0, 1.0) / n;
      perturbations.emplace_back(std::vector<double>(x.times().begin(), x.times().end()), v);
    }
    ASSERT_TRUE(continuity_probe_max(x, perturbations).holds) << "case " << c;
  }
}
