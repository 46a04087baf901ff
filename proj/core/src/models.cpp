#include "pathfunc/models.hpp"

#include <algorithm>
#include <cmath>

#include "pathfunc/error.hpp"
#include "pathfunc/rng.hpp"

namespace pathfunc {

SdeModel::SdeModel(std::string label, std::size_t dim_state, std::size_t dim_noise,
                   std::vector<double> initial, Drift drift, Diffusion diffusion)
    : label_(std::move(label)),
      d_(dim_state),
      d1_(dim_noise),
      y0_(std::move(initial)),
      drift_(std::move(drift)),
      diffusion_(std::move(diffusion)) {
  if (d_ == 0 || d1_ == 0) throw PreconditionError("SdeModel: dimensions must be positive");
  if (y0_.size() != d_) throw PreconditionError("SdeModel: initial state has wrong dimension");
  if (!drift_ || !diffusion_) throw PreconditionError("SdeModel: coefficients must be set");
  for (double v : y0_) {
    if (!std::isfinite(v)) throw PreconditionError("SdeModel: initial state must be finite");
  }
}

double SdeModel::drift(double y, double t) const {
  double out = 0.0;
  drift_(std::span<const double>(&y, 1), t, std::span<double>(&out, 1));
  return out;
}

double SdeModel::diffusion(double y, double t) const {
  double out = 0.0;
  diffusion_(std::span<const double>(&y, 1), t, std::span<double>(&out, 1));
  return out;
}

SdeModel SdeModel::with_a5(A5Declaration decl) const {
  if (!(decl.k >= 0.0) || !(decl.y_lo < decl.y_hi)) {
    throw PreconditionError("SdeModel: invalid A5 declaration");
  }
  SdeModel m = *this;
  m.a5_ = decl;
  return m;
}

SdeModel SdeModel::with_sigma_band(double epsilon) const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw PreconditionError("SdeModel: sigma band epsilon must lie in (0,1)");
  }
  SdeModel m = *this;
  m.sigma_band_ = epsilon;
  return m;
}

SdeModel SdeModel::with_gbm_params(GbmParams p) const {
  SdeModel m = *this;
  m.gbm_ = p;
  return m;
}

SdeModel SdeModel::with_initial(std::vector<double> y0) const {
  if (y0.size() != d_) throw PreconditionError("SdeModel: initial state has wrong dimension");
  for (double v : y0) {
    if (!std::isfinite(v)) throw PreconditionError("SdeModel: initial state must be finite");
  }
  SdeModel m = *this;
  m.y0_ = std::move(y0);
  return m;
}

SdeModel gbm(double r, double sigma, double x0) {
  if (!std::isfinite(r)) throw PreconditionError("gbm: rate must be finite");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw PreconditionError("gbm: sigma must be nonnegative");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw PreconditionError("gbm: x0 must be positive");
  SdeModel m(
      "gbm", 1, 1, {x0},
      [r](std::span<const double> y, double, std::span<double> out) { out[0] = r * y[0]; },
      [sigma](std::span<const double> y, double, std::span<double> out) { out[0] = sigma * y[0]; });
  return m.with_a5({std::max(std::abs(r), sigma), 0.0, 10.0}).with_gbm_params({r, sigma});
}

SdeModel bessel3(double x0) {
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw PreconditionError("bessel3: x0 must be positive");
  return SdeModel(
      "bessel3", 1, 1, {x0},
      [](std::span<const double> y, double, std::span<double> out) { out[0] = 1.0 / y[0]; },
      [](std::span<const double>, double, std::span<double> out) { out[0] = 1.0; });
}

SdeModel constant_coefficients(double drift, double diffusion, double x0) {
  if (!std::isfinite(drift) || !std::isfinite(diffusion) || !std::isfinite(x0)) {
    throw PreconditionError("constant_coefficients: parameters must be finite");
  }
  SdeModel m(
      "constant", 1, 1, {x0},
      [drift](std::span<const double>, double, std::span<double> out) { out[0] = drift; },
      [diffusion](std::span<const double>, double, std::span<double> out) { out[0] = diffusion; });
  return m.with_a5({0.0, -10.0, 10.0});
}

SdeModel stoch_vol(StochVolParams p) {
  if (!(p.x0 > 0.0) || !(p.y0 > 0.0)) throw PreconditionError("stoch_vol: x0 and y0 must be positive");
  if (!(std::abs(p.rho) <= 1.0)) throw PreconditionError("stoch_vol: |rho| must not exceed 1");
  if (!p.sigma_of_y || !p.mu || !p.b_vol) throw PreconditionError("stoch_vol: coefficient functions must be set");
  for (int i = 1; i <= 1000; ++i) {
    double y = 0.01 * i;
    double s = p.sigma_of_y(y);
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw PreconditionError("stoch_vol: sigma(y) must be positive for y > 0 (fails at y=" +
                              std::to_string(y) + ")");
    }
  }
  const double r = p.r;
  const double rho = p.rho;
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  auto sig = p.sigma_of_y;
  auto mu = p.mu;
  auto bv = p.b_vol;
  return SdeModel(
      "stoch_vol", 2, 2, {p.x0, p.y0},
      [r, mu](std::span<const double> y, double t, std::span<double> out) {
        out[0] = r * y[0];
        out[1] = mu(t) * y[1];
      },
      [sig, bv, rho, rho_c](std::span<const double> y, double t, std::span<double> out) {
        const double sx = sig(y[1]) * y[0];
        const double sy = bv(t) * y[1];
        out[0] = sx;
        out[1] = 0.0;
        out[2] = sy * rho;
        out[3] = sy * rho_c;
      });
}

A5Report probe_a5(const SdeModel& model, std::size_t n_probes, std::uint64_t seed) {
  if (!model.a5_compliant()) {
    throw PreconditionError("probe_a5: model '" + model.label() + "' is not declared A5-compliant");
  }
  const A5Declaration decl = *model.a5();
  const std::size_t d = model.dim_state();
  const std::size_t nd = d * model.dim_noise();
  Xoshiro256 rng(RngStream{seed, 0});
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform_open(); };

  std::vector<double> y1(d), y2(d), b1(d), b2(d), s1(nd), s2(nd);
  A5Report rep;
  rep.k = decl.k;
  rep.n_probes = n_probes;
  for (std::size_t p = 0; p < n_probes; ++p) {
    for (std::size_t i = 0; i < d; ++i) {
      y1[i] = draw(decl.y_lo, decl.y_hi);
      y2[i] = draw(decl.y_lo, decl.y_hi);
    }
    const double t1 = draw(0.0, 1.0);
    const double t2 = draw(0.0, 1.0);
    model.drift(y1, t1, b1);
    model.drift(y2, t2, b2);
    model.diffusion(y1, t1, s1);
    model.diffusion(y2, t2, s2);
    double dy = 0.0, db = 0.0, ds = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      dy += (y1[i] - y2[i]) * (y1[i] - y2[i]);
      db += (b1[i] - b2[i]) * (b1[i] - b2[i]);
    }
    for (std::size_t i = 0; i < nd; ++i) ds += (s1[i] - s2[i]) * (s1[i] - s2[i]);
    const double denom = std::sqrt(dy) + std::sqrt(std::abs(t1 - t2));
    if (!(denom > 0.0)) continue;
    rep.max_ratio = std::max({rep.max_ratio, std::sqrt(db) / denom, std::sqrt(ds) / denom});
  }
  rep.pass = rep.max_ratio <= decl.k * (1.0 + 1e-12);
  return rep;
}

}  // namespace pathfunc
