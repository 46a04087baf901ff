#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pathfunc {

/// Declared Lipschitz/Hoelder-1/2 bound for the coefficients, with the box
/// [y_lo, y_hi]^d x [0,1] on which it is probed.
struct A5Declaration {
  double k = 0.0;
  double y_lo = 0.0;
  double y_hi = 10.0;
};

/// Constant-coefficient geometric Brownian motion parameters; enables the
/// log-exact stepping mode.
struct GbmParams {
  double r = 0.0;
  double sigma = 0.0;
};

/// dY = b(Y,t) dt + sigma(Y,t) dW with Y in R^d, W in R^{d1}.
class SdeModel {
 public:
  /// Writes b(y,t) into out (size d).
  using Drift = std::function<void(std::span<const double> y, double t, std::span<double> out)>;
  /// Writes sigma(y,t) into out (size d*d1, row-major).
  using Diffusion = std::function<void(std::span<const double> y, double t, std::span<double> out)>;

  SdeModel(std::string label, std::size_t dim_state, std::size_t dim_noise,
           std::vector<double> initial, Drift drift, Diffusion diffusion);

  const std::string& label() const noexcept { return label_; }
  std::size_t dim_state() const noexcept { return d_; }
  std::size_t dim_noise() const noexcept { return d1_; }
  std::span<const double> initial_state() const noexcept { return y0_; }

  void drift(std::span<const double> y, double t, std::span<double> out) const { drift_(y, t, out); }
  void diffusion(std::span<const double> y, double t, std::span<double> out) const {
    diffusion_(y, t, out);
  }
  /// Scalar shortcuts for d = d1 = 1.
  double drift(double y, double t) const;
  double diffusion(double y, double t) const;

  const std::optional<A5Declaration>& a5() const noexcept { return a5_; }
  bool a5_compliant() const noexcept { return a5_.has_value(); }
  /// epsilon with |sigma| ^ |1/sigma| > epsilon, required by the variable-step binomial chain.
  const std::optional<double>& sigma_band() const noexcept { return sigma_band_; }
  const std::optional<GbmParams>& gbm_params() const noexcept { return gbm_; }

  SdeModel with_a5(A5Declaration decl) const;
  SdeModel with_sigma_band(double epsilon) const;
  SdeModel with_gbm_params(GbmParams p) const;
  SdeModel with_initial(std::vector<double> y0) const;

 private:
  std::string label_;
  std::size_t d_;
  std::size_t d1_;
  std::vector<double> y0_;
  Drift drift_;
  Diffusion diffusion_;
  std::optional<A5Declaration> a5_;
  std::optional<double> sigma_band_;
  std::optional<GbmParams> gbm_;
};

/// dX = r X dt + sigma X dW. sigma = 0 gives the deterministic exponential.
SdeModel gbm(double r, double sigma, double x0);

/// dX = (1/X) dt + dW. Carries no regularity declaration; used by the counter-example harnesses.
SdeModel bessel3(double x0);

/// dX = b dt + s dW with constant b and s.
SdeModel constant_coefficients(double drift, double diffusion, double x0);

struct StochVolParams {
  double r = 0.0;
  std::function<double(double)> sigma_of_y;  ///< sigma(y) > 0 for y > 0
  std::function<double(double)> mu;          ///< volatility drift mu(t)
  std::function<double(double)> b_vol;       ///< vol-of-vol b(t)
  double rho = 0.0;
  double x0 = 1.0;
  double y0 = 1.0;
};

/// State (X, Y): dX = X (r dt + sigma(Y) dW), dY = Y (mu(t) dt + b(t) dB), corr(W,B) = rho.
/// Noise columns are mixed through the Cholesky factor [[1,0],[rho, sqrt(1-rho^2)]].
SdeModel stoch_vol(StochVolParams params);

struct A5Report {
  double max_ratio = 0.0;
  double k = 0.0;
  std::size_t n_probes = 0;
  bool pass = false;
};

/// Spot-checks |phi(y1,t1) - phi(y2,t2)| <= K (|y1-y2| + |t1-t2|^{1/2}) for phi in {b, sigma}
/// on random pairs drawn from the declared box. Throws PreconditionError for
/// models without an A5 declaration.
A5Report probe_a5(const SdeModel& model, std::size_t n_probes, std::uint64_t seed);

}  // namespace pathfunc
