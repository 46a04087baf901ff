#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathfunc::cli {

/// Invalid or missing configuration entry; key() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct ModelBlock {
  std::optional<std::string> kind;  // gbm | bessel3 | stoch_vol | constant
  std::optional<double> x0, r, sigma, epsilon;
  std::optional<double> y0, rho, mu, vol_of_vol;
  std::optional<std::string> sigma_fn;  // constant | linear | sqrt
  std::optional<double> drift, diffusion;
  bool operator==(const ModelBlock&) const = default;
};

struct SchemeBlock {
  std::optional<std::string> kind;  // euler | binomial_fixed | binomial_variable | log_exact | tangency
  std::optional<double> h;
  std::optional<double> cap;
  bool cap_inverse_h = false;       // scheme.cap = 1/h
  std::optional<double> qu_lower, qu_upper;
  std::optional<double> consistency_c;
  bool operator==(const SchemeBlock&) const = default;
};

struct FunctionalBlock {
  std::optional<std::size_t> coordinate, m;
  std::optional<double> lower, upper;
  bool operator==(const FunctionalBlock&) const = default;
};

struct PayoffBlock {
  std::optional<std::string> kind;      // up_in_call | discrete_barrier_call | custom_terminal | hitting_time
  std::optional<double> strike, barrier, rate, value;
  std::optional<std::string> terminal;  // value | call | put | constant
  bool operator==(const PayoffBlock&) const = default;
};

struct RunBlock {
  std::optional<std::size_t> n_paths;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::vector<double> h_grid;
  std::optional<std::string> oracle;  // number | reflection | none
  std::optional<double> bias_c;
  std::optional<bool> ui_override;
  std::optional<std::size_t> ui_paths;
  std::optional<std::size_t> n_draws;
  std::vector<double> probe_y;
  std::vector<double> probe_t;
  bool operator==(const RunBlock&) const = default;
};

struct OutputBlock {
  std::optional<std::string> format;  // table | csv
  std::optional<std::string> path;
  std::optional<bool> timing;
  bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
  ModelBlock model;
  SchemeBlock scheme;
  FunctionalBlock functional;
  PayoffBlock payoff;
  RunBlock run;
  OutputBlock output;
  bool operator==(const RunConfig&) const = default;
};

/// Parses `section.key = value` lines; '#' starts a comment. Unknown keys,
/// duplicate keys, malformed values and unknown kinds raise ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace pathfunc::cli
