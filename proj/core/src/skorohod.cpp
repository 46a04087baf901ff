#include "pathfunc/skorohod.hpp"

#include <algorithm>
#include <cmath>

#include "pathfunc/error.hpp"

namespace pathfunc {

TimeChange::TimeChange() : knots_{{0.0, 0.0}, {1.0, 1.0}} {}

TimeChange::TimeChange(std::vector<std::pair<double, double>> interior) {
  knots_.reserve(interior.size() + 2);
  knots_.emplace_back(0.0, 0.0);
  for (const auto& k : interior) knots_.push_back(k);
  knots_.emplace_back(1.0, 1.0);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].first > knots_[i - 1].first) || !(knots_[i].second > knots_[i - 1].second)) {
      throw PreconditionError("TimeChange: knots must be strictly increasing in both coordinates");
    }
  }
}

double TimeChange::operator()(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s,
                             [](double v, const auto& k) { return v < k.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (s == lo.first) return lo.second;
  return lo.second + (s - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
}

double TimeChange::inverse(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), u,
                             [](double v, const auto& k) { return v < k.second; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (u == lo.second) return lo.first;
  return lo.first + (u - lo.second) * (hi.first - lo.first) / (hi.second - lo.second);
}

double TimeChange::distance_from_identity() const {
  double d = 0.0;
  for (const auto& [s, u] : knots_) d = std::max(d, std::abs(u - s));
  return d;
}

TimeChange TimeChange::inverted() const {
  std::vector<std::pair<double, double>> inner;
  for (std::size_t i = 1; i + 1 < knots_.size(); ++i) inner.emplace_back(knots_[i].second, knots_[i].first);
  return TimeChange(std::move(inner));
}

double sup_distance_under(const StepPath& x, const StepPath& y, const TimeChange& lambda) {
  if (!x.is_scalar() || !y.is_scalar()) throw PreconditionError("skorohod: scalar paths required");
  // Walk the merged breakpoints: y's grid times and the preimages of x's grid times.
  const auto xt = x.times();
  const auto yt = y.times();
  std::size_t ix = 0, iy = 0;
  double sup = std::abs(x.value(0) - y.value(0));
  std::size_t nx = 1, ny = 1;
  while (nx < xt.size() || ny < yt.size()) {
    const double tx = nx < xt.size() ? lambda.inverse(xt[nx]) : 2.0;
    const double ty = ny < yt.size() ? yt[ny] : 2.0;
    const double t = std::min(tx, ty);
    while (nx < xt.size() && lambda.inverse(xt[nx]) == t) ix = nx++;
    while (ny < yt.size() && yt[ny] == t) iy = ny++;
    sup = std::max(sup, std::abs(x.value(ix) - y.value(iy)));
  }
  return sup;
}

double skorohod_objective(const StepPath& x, const StepPath& y, const TimeChange& lambda) {
  return std::max(lambda.distance_from_identity(), sup_distance_under(x, y, lambda));
}

namespace {

struct Jump {
  double t;
  int sign;
};

std::vector<Jump> jumps(const StepPath& p) {
  std::vector<Jump> out;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double dv = p.value(i) - p.value(i - 1);
    if (dv != 0.0) out.push_back({p.times()[i], dv > 0.0 ? 1 : -1});
  }
  return out;
}

// Candidate family for x o lambda ~ y, lambda mapping y's jump times onto x's.
SkorohodMatch search(const StepPath& x, const StepPath& y, std::size_t budget) {
  SkorohodMatch best{skorohod_objective(x, y, TimeChange()), TimeChange()};
  const auto jx = jumps(x);
  const auto jy = jumps(y);
  if (jx.empty() || jy.empty() || budget == 0) return best;

  std::vector<double> thresholds;
  for (const Jump& a : jx) {
    for (const Jump& b : jy) {
      if (a.sign == b.sign) thresholds.push_back(std::abs(a.t - b.t));
    }
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  constexpr std::size_t kMaxThresholds = 256;
  if (thresholds.size() > kMaxThresholds) {
    std::vector<double> picked;
    for (std::size_t k = 0; k < kMaxThresholds; ++k) {
      picked.push_back(thresholds[k * (thresholds.size() - 1) / (kMaxThresholds - 1)]);
    }
    thresholds = std::move(picked);
  }

  for (double delta : thresholds) {
    if (delta >= best.distance) break;  // ||lambda - I|| could reach delta
    std::vector<std::pair<double, double>> knots;
    std::size_t i = 0;
    for (const Jump& b : jy) {
      if (knots.size() >= budget) break;
      if (b.t >= 1.0) continue;
      while (i < jx.size() && jx[i].t < b.t - delta) ++i;
      std::size_t k = i;
      while (k < jx.size() && jx[k].t <= b.t + delta && jx[k].sign != b.sign) ++k;
      if (k >= jx.size() || jx[k].t > b.t + delta || jx[k].t >= 1.0) continue;
      if (!knots.empty() && !(jx[k].t > knots.back().second && b.t > knots.back().first)) continue;
      knots.emplace_back(b.t, jx[k].t);
      i = k + 1;
    }
    if (knots.empty()) continue;
    TimeChange lambda(std::move(knots));
    const double d = skorohod_objective(x, y, lambda);
    if (d < best.distance) best = {d, std::move(lambda)};
  }
  return best;
}

}  // namespace

SkorohodMatch skorohod_match(const StepPath& x, const StepPath& y, std::size_t budget) {
  if (!x.is_scalar() || !y.is_scalar()) throw PreconditionError("skorohod: scalar paths required");
  SkorohodMatch forward = search(x, y, budget);
  SkorohodMatch backward = search(y, x, budget);
  // y o mu ~ x  <=>  x o mu^{-1} ~ y, with the same objective value.
  if (backward.distance < forward.distance) {
    return {backward.distance, backward.witness.inverted()};
  }
  return forward;
}

double skorohod_distance_approx(const StepPath& x, const StepPath& y, std::size_t budget) {
  return skorohod_match(x, y, budget).distance;
}

MaxProbeReport continuity_probe_max(const StepPath& x, std::span<const StepPath> perturbations,
                                    double tol, std::size_t budget) {
  MaxProbeReport rep;
  const StepPath mx = running_max(x);
  for (const StepPath& xn : perturbations) {
    const SkorohodMatch in = skorohod_match(xn, x, budget);
    const StepPath mxn = running_max(xn);
    // The witness for (x_n, x) also witnesses (M x_n, M x): M commutes with time changes.
    const double out = std::min(skorohod_distance_approx(mxn, mx, budget),
                                skorohod_objective(mxn, mx, in.witness));
    rep.distances.emplace_back(in.distance, out);
    rep.holds = rep.holds && out <= in.distance + tol;
  }
  return rep;
}

HittingProbeReport continuity_probe_hitting(const StepPath& x, const BarrierPair& barriers,
                                            std::span<const StepPath> perturbations, double tol) {
  HittingProbeReport rep;
  rep.partition = classify_c_partition(x, barriers);
  rep.tau = hitting_time(x, barriers);
  if (rep.partition == CPartition::C4) {
    rep.applicable = false;
    rep.note = "not applicable - C4";
    return rep;
  }
  rep.applicable = true;
  for (const StepPath& xn : perturbations) {
    rep.tau_errors.push_back(std::abs(hitting_time(xn, barriers) - rep.tau));
  }
  const auto& e = rep.tau_errors;
  if (e.empty()) {
    rep.note = "no perturbations";
    return rep;
  }
  bool tail_monotone = true;
  const std::size_t from = e.size() >= 3 ? e.size() - 3 : 0;
  for (std::size_t i = from + 1; i < e.size(); ++i) tail_monotone = tail_monotone && e[i] <= e[i - 1];
  rep.converges = tail_monotone && e.back() <= tol;
  rep.note = rep.converges ? "hitting times converge" : "hitting times do not converge";
  return rep;
}

}  // namespace pathfunc
