#include "pathfunc/consistency.hpp"

#include <algorithm>
#include <cmath>

#include "pathfunc/error.hpp"

namespace pathfunc {

StepKernel kernel_for(SchemeKind kind) {
  StepKernel k;
  k.name = std::string(to_string(kind));
  k.two_point = kind == SchemeKind::BinomialFixed || kind == SchemeKind::BinomialVariable;
  k.step = [kind](const SdeModel& m, std::span<const double> y, double t, double h, NoiseSource& n) {
    return take_step(kind, m, y, t, h, n);
  };
  return k;
}

namespace {

struct Accumulator {
  std::size_t d;
  double w_total = 0.0;
  double dt_sum = 0.0;
  double dt_min = INFINITY;
  double dt_max = 0.0;
  std::vector<double> dy_sum;     // sum w dY
  std::vector<double> dy_outer;   // sum w dY dY'
  std::vector<double> res_sq;     // sum w (dY - dt b)^2, per coordinate
  std::vector<double> outer_sq;   // sum w (dY_i dY_j)^2

  explicit Accumulator(std::size_t dim)
      : d(dim), dy_sum(dim), dy_outer(dim * dim), res_sq(dim), outer_sq(dim * dim) {}

  void add(const ChainStep& s, std::span<const double> b, double w) {
    w_total += w;
    dt_sum += w * s.dt;
    dt_min = std::min(dt_min, s.dt);
    dt_max = std::max(dt_max, s.dt);
    for (std::size_t i = 0; i < d; ++i) {
      dy_sum[i] += w * s.dy[i];
      const double r = s.dy[i] - s.dt * b[i];
      res_sq[i] += w * r * r;
      for (std::size_t j = 0; j < d; ++j) {
        const double o = s.dy[i] * s.dy[j];
        dy_outer[i * d + j] += w * o;
        outer_sq[i * d + j] += w * o * o;
      }
    }
  }
};

}  // namespace

ConsistencyReport check_local_consistency(const SdeModel& model, const SchemeConfig& config,
                                          std::span<const ProbePoint> probes,
                                          const ConsistencyOptions& options) {
  return check_local_consistency(model, config, kernel_for(config.kind), probes, options);
}

ConsistencyReport check_local_consistency(const SdeModel& model, const SchemeConfig& config,
                                          const StepKernel& kernel,
                                          std::span<const ProbePoint> probes,
                                          const ConsistencyOptions& options) {
  const std::size_t d = model.dim_state();
  const std::size_t d1 = model.dim_noise();
  const double h = config.h;
  ConsistencyReport report;
  report.scheme = kernel.name;
  report.h = h;
  report.pass = true;

  std::vector<double> b(d), s(d * d1);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const ProbePoint& probe = probes[p];
    ProbeResult res;
    res.probe = probe;
    res.exact = kernel.two_point;
    try {
      if (probe.y.size() != d) throw PreconditionError("probe state has wrong dimension");
      validate(model, config);
      const auto [qu_lo, qu_hi] = qu_bounds(model, config);
      model.drift(probe.y, probe.t, b);
      model.diffusion(probe.y, probe.t, s);

      Accumulator acc(d);
      std::size_t n = 0;
      if (kernel.two_point) {
        FixedNoise up(0.0, 1.0), down(0.0, -1.0);
        acc.add(kernel.step(model, probe.y, probe.t, h, up), b, 0.5);
        acc.add(kernel.step(model, probe.y, probe.t, h, down), b, 0.5);
      } else {
        StreamNoise noise(RngStream{options.seed, p});
        n = options.n_draws;
        if (n < 2) throw PreconditionError("consistency check needs at least two draws");
        for (std::size_t k = 0; k < n; ++k) {
          acc.add(kernel.step(model, probe.y, probe.t, h, noise), b, 1.0);
        }
      }

      const double W = acc.w_total;
      const double mean_dt = acc.dt_sum / W;
      res.mean_dt = mean_dt;
      res.min_dt = acc.dt_min;
      res.max_dt = acc.dt_max;
      res.qu = acc.dt_min >= qu_lo * h * (1.0 - 1e-12) && acc.dt_max <= qu_hi * h * (1.0 + 1e-12);

      std::vector<double> mean(d);
      for (std::size_t i = 0; i < d; ++i) mean[i] = acc.dy_sum[i] / W;

      const double allowance = options.c * h;
      res.r1.resize(d);
      res.r1_tol.resize(d);
      res.lc1 = true;
      for (std::size_t i = 0; i < d; ++i) {
        res.r1[i] = (mean[i] - mean_dt * b[i]) / mean_dt;
        double se = 0.0;
        if (!kernel.two_point) {
          const double m_res = mean[i] - (acc.dt_sum / W) * b[i];
          const double var = std::max(0.0, acc.res_sq[i] / W - m_res * m_res);
          se = std::sqrt(var / static_cast<double>(n)) / mean_dt;
        }
        res.r1_tol[i] = allowance + options.n_stderr * se;
        res.lc1 = res.lc1 && std::abs(res.r1[i]) <= res.r1_tol[i];
      }

      res.r2.resize(d * d);
      res.r2_tol.resize(d * d);
      res.lc2 = true;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          double sst = 0.0;
          for (std::size_t k = 0; k < d1; ++k) sst += s[i * d1 + k] * s[j * d1 + k];
          const double second = acc.dy_outer[i * d + j] / W;
          const double cov = second - mean[i] * mean[j];
          res.r2[i * d + j] = (cov - mean_dt * sst) / mean_dt;
          double se = 0.0;
          if (!kernel.two_point) {
            const double var = std::max(0.0, acc.outer_sq[i * d + j] / W - second * second);
            se = std::sqrt(var / static_cast<double>(n)) / mean_dt;
          }
          res.r2_tol[i * d + j] = allowance + options.n_stderr * se;
          res.lc2 = res.lc2 && std::abs(res.r2[i * d + j]) <= res.r2_tol[i * d + j];
        }
      }
    } catch (const PreconditionError& e) {
      res.error = e.what();
    } catch (const SimulationError& e) {
      res.error = e.what();
    }
    report.pass = report.pass && res.pass();
    report.probes.push_back(std::move(res));
  }
  return report;
}

}  // namespace pathfunc
