#include "pathfunc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pathfunc/error.hpp"

namespace pathfunc {

namespace {

template <typename F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double up_and_in_call_reflection(double x0, double r, double sigma, double strike, double barrier) {
  if (!(x0 > 0.0 && sigma > 0.0 && barrier > 0.0)) {
    throw PreconditionError("up_and_in_call_reflection: x0, sigma, barrier must be positive");
  }
  // log X(1) = log x0 + sigma * W, W ~ N(nu, 1) with drift nu per unit sigma.
  const double nu = (r - 0.5 * sigma * sigma) / sigma;
  const double b = std::log(barrier / x0) / sigma;
  const double w_strike = strike > 0.0 ? std::log(strike / x0) / sigma : -40.0 + nu;
  const double w_top = std::max(b, w_strike) + std::abs(nu) + 40.0;
  const double w_bottom = std::max(w_strike, nu - 40.0);

  auto payoff = [&](double w) { return std::max(x0 * std::exp(sigma * w) - strike, 0.0); };
  auto touch = [&](double w) {
    if (b <= 0.0 || w >= b) return 1.0;
    return std::exp(-2.0 * b * (b - w));
  };
  auto integrand = [&](double w) { return payoff(w) * touch(w) * phi(w - nu); };

  double total = 0.0;
  if (b > w_bottom) {
    total += integrate(integrand, w_bottom, std::min(b, w_top));
    total += integrate(integrand, b, w_top);
  } else {
    total += integrate(integrand, w_bottom, w_top);
  }
  return std::exp(-r) * total;
}

double bessel3_density(double x, double y, double t) {
  if (!(x > 0.0 && t > 0.0)) throw PreconditionError("bessel3_density: x and t must be positive");
  if (y <= 0.0) return 0.0;
  const double s = std::sqrt(2.0 * std::numbers::pi * t);
  return (y / x) / s * (std::exp(-(y - x) * (y - x) / (2.0 * t)) - std::exp(-(y + x) * (y + x) / (2.0 * t)));
}

double bessel3_mean(double x, double t) {
  const double top = x + 40.0 * std::sqrt(t);
  return integrate([&](double y) { return y * bessel3_density(x, y, t); }, 0.0, top);
}

double bessel3_reciprocal_mean(double x, double t) {
  const double top = x + 40.0 * std::sqrt(t);
  // density / y stays bounded near 0 since the density vanishes like y^2.
  return integrate([&](double y) { return y > 0.0 ? bessel3_density(x, y, t) / y : 0.0; }, 0.0, top);
}

}  // namespace pathfunc
