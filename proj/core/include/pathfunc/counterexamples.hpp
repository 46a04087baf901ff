#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pathfunc/path_ops.hpp"

namespace pathfunc {

/// X(s) = 1 - (s - 1/2)^2 against beta = 1, and X - h for small h.
struct TangencyReport {
  double tau = 0.0;                                ///< exit time of X
  std::vector<std::pair<double, double>> tau_h;    ///< (h, exit time of X - h)
  CPartition partition = CPartition::C3;           ///< class of X
};

/// `grid_intervals` must be even so that 1/2 is a grid point.
TangencyReport counterexample_tangency(std::span<const double> h_values = {},
                                       std::size_t grid_intervals = 2000);

struct BesselRow {
  double h = 0.0;
  double cap = 0.0;  ///< +inf for the uncapped run
  double mean = 0.0;
  double std_error = 0.0;
};

/// Euler-simulated BES(3) from 1 with state cap 1/h, against quadrature oracles.
struct BesselReport {
  std::vector<BesselRow> capped;
  BesselRow uncapped;                ///< coarsest h, no cap
  double oracle_mean = 0.0;          ///< E[X(1)] by quadrature of the BES(3) density
  double oracle_reciprocal = 0.0;    ///< E[1/X(1)], the strict local martingale 1/X
  bool capped_mean_near_one = false; ///< finest capped mean within 3 se of 1
  bool oracle_below_one = false;     ///< 1 - oracle_mean > 5 se (finest row)
  bool uncapped_above_oracle = false;///< uncapped mean - oracle_mean > 3 se
};

BesselReport counterexample_bessel(std::span<const double> h_grid, std::size_t n_paths,
                                   std::uint64_t seed, std::size_t workers = 0);

struct StrongRow {
  std::size_t n = 0;
  double scaled_error = 0.0;  ///< sqrt(N) E[sup_t |W(t) - W(floor(Nt)/N)|]
  double std_error = 0.0;
  double reference = 0.0;     ///< sqrt(2 log N)
};

struct StrongReport {
  std::vector<StrongRow> rows;
  bool strictly_increasing = false;
};

/// Brownian motion resolved with `substeps` points inside each of the N intervals.
StrongReport counterexample_strong(std::span<const std::size_t> n_grid, std::size_t n_paths,
                                   std::size_t substeps, std::uint64_t seed, std::size_t workers = 0);

}  // namespace pathfunc
