#include "pathfunc/path_ops.hpp"

#include <algorithm>
#include <cmath>

#include "pathfunc/error.hpp"

namespace pathfunc {

namespace {

void require_scalar(const StepPath& path, const char* op) {
  if (!path.is_scalar()) throw PreconditionError(std::string(op) + ": scalar path required");
}

}  // namespace

SampleVector::SampleVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("SampleVector: at least one entry required");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    double e = entries_[i];
    if (!(e >= 0.0 && e <= 1.0)) throw PreconditionError("SampleVector: entries must lie in [0,1]");
    if (i > 0 && e < entries_[i - 1]) throw PreconditionError("SampleVector: entries must be nondecreasing");
  }
}

SampleVector SampleVector::uniform(std::size_t m) {
  if (m == 0) throw PreconditionError("SampleVector: m must be positive");
  std::vector<double> e(m);
  for (std::size_t i = 0; i < m; ++i) e[i] = static_cast<double>(i + 1) / static_cast<double>(m);
  e.back() = 1.0;
  return SampleVector(std::move(e));
}

SampleVector SampleVector::constant(std::size_t m, double t) {
  return SampleVector(std::vector<double>(m, t));
}

SampleVector SampleVector::scaled(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("SampleVector: scale must lie in [0,1]");
  std::vector<double> e(entries_);
  for (double& v : e) v = std::min(1.0, v * s);
  return SampleVector(std::move(e));
}

double eval(const StepPath& path, double t) { return path.value(path.index_at(t)); }

std::span<const double> eval_state(const StepPath& path, double t) {
  return path.state(path.index_at(t));
}

StepPath running_max(const StepPath& path) {
  require_scalar(path, "running_max");
  std::vector<double> out(path.values().begin(), path.values().end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
  return StepPath(std::vector<double>(path.times().begin(), path.times().end()), std::move(out));
}

std::vector<double> project(const StepPath& path, const SampleVector& nu) {
  require_scalar(path, "project");
  std::vector<double> out;
  out.reserve(nu.size());
  for (double t : nu.entries()) out.push_back(eval(path, t));
  return out;
}

double hitting_time(const StepPath& path, const BarrierPair& barriers) {
  require_scalar(path, "hitting_time");
  const auto times = path.times();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!barriers.inside(times[i], path.value(i))) return times[i];
  }
  return 1.0;
}

std::string_view to_string(CPartition c) {
  switch (c) {
    case CPartition::C1: return "C1";
    case CPartition::C2: return "C2";
    case CPartition::C3: return "C3";
    case CPartition::C4: return "C4";
  }
  return "?";
}

CPartition classify_c_partition(const StepPath& path, const BarrierPair& barriers,
                                std::optional<double> tol) {
  require_scalar(path, "classify_c_partition");
  double eps = 0.0;
  if (tol) {
    if (*tol < 0.0) throw PreconditionError("classify_c_partition: tolerance must be nonnegative");
    eps = *tol;
  } else {
    double scale = 1.0;
    for (double v : path.values()) scale = std::max(scale, std::abs(v));
    eps = 1e-12 * scale;
  }

  const double tau = hitting_time(path, barriers);
  if (tau == 1.0) return CPartition::C3;

  const std::size_t i = path.index_at(tau);
  const double v = path.value(i);
  const bool has_next = i + 1 < path.size();
  const double t_next = has_next ? path.times()[i + 1] : 1.0;
  const double v_next = has_next ? path.value(i + 1) : v;

  const double hi = barriers.upper(tau);
  if (std::isfinite(hi) && v >= hi - eps) {
    bool beyond = v > hi + eps || (has_next && v_next > barriers.upper(t_next) + eps);
    return beyond ? CPartition::C1 : CPartition::C4;
  }
  const double lo = barriers.lower(tau);
  if (std::isfinite(lo) && v <= lo + eps) {
    bool beyond = v < lo - eps || (has_next && v_next < barriers.lower(t_next) - eps);
    return beyond ? CPartition::C2 : CPartition::C4;
  }
  return CPartition::C4;
}

}  // namespace pathfunc
