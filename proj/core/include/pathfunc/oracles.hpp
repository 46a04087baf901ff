#pragma once

namespace pathfunc {

/// Standard normal CDF.
double normal_cdf(double x);

/// Continuously monitored up-and-in call e^{-r T} E[(X(T) - K)^+ 1{max X >= H}] under
/// GBM with T = 1, computed by one-dimensional quadrature over the terminal
/// log-return, using the Brownian-bridge probability exp(-2b(b-w)) of touching
/// the barrier given the endpoint.
double up_and_in_call_reflection(double x0, double r, double sigma, double strike, double barrier);

/// Transition density of the 3-dimensional Bessel process from x to y over time t.
double bessel3_density(double x, double y, double t);

/// E[X(t)] for BES(3) started at x, by quadrature of the transition density.
double bessel3_mean(double x, double t);

/// E[1/X(t)] for BES(3) started at x, by quadrature of the transition density.
double bessel3_reciprocal_mean(double x, double t);

}  // namespace pathfunc
