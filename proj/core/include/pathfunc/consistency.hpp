#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pathfunc/models.hpp"
#include "pathfunc/schemes.hpp"

namespace pathfunc {

/// A chain transition kernel under test. Two-point kernels (driven only by
/// NoiseSource::sign) have their moments computed exactly by enumeration;
/// the rest are sampled.
struct StepKernel {
  std::string name;
  std::function<ChainStep(const SdeModel&, std::span<const double>, double, double, NoiseSource&)> step;
  bool two_point = false;
};

StepKernel kernel_for(SchemeKind kind);

struct ProbePoint {
  std::vector<double> y;
  double t = 0.0;
};

struct ProbeResult {
  ProbePoint probe;
  double mean_dt = 0.0;
  double min_dt = 0.0;
  double max_dt = 0.0;
  std::vector<double> r1;      ///< (E[dY] - E[dt] b) / E[dt]
  std::vector<double> r1_tol;
  std::vector<double> r2;      ///< (cov(dY) - E[dt] sigma sigma') / E[dt], row-major d x d
  std::vector<double> r2_tol;
  bool exact = false;          ///< moments from enumeration, not sampling
  bool lc1 = false;
  bool lc2 = false;
  bool qu = false;
  std::string error;           ///< precondition failure at this probe, if any

  bool pass() const { return error.empty() && lc1 && lc2 && qu; }
};

struct ConsistencyReport {
  std::string scheme;
  double h = 0.0;
  std::vector<ProbeResult> probes;
  bool pass = false;
};

struct ConsistencyOptions {
  double c = 1.0;            ///< consistency constant in the C*h allowance
  double n_stderr = 4.0;     ///< statistical allowance in standard errors
  std::size_t n_draws = 1'000'000;
  std::uint64_t seed = 0;
};

/// Estimates conditional increment moments at each probe and checks
/// |r1|, |r2| <= C h + n_stderr * se, plus qu_lower h <= dt <= qu_upper h.
ConsistencyReport check_local_consistency(const SdeModel& model, const SchemeConfig& config,
                                          std::span<const ProbePoint> probes,
                                          const ConsistencyOptions& options);

ConsistencyReport check_local_consistency(const SdeModel& model, const SchemeConfig& config,
                                          const StepKernel& kernel,
                                          std::span<const ProbePoint> probes,
                                          const ConsistencyOptions& options);

}  // namespace pathfunc
