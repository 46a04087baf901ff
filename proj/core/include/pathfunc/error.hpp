#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathfunc {

/// Argument outside the domain of a path operator (e.g. t outside [0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A constructor or operation precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite coefficient or state encountered while stepping a chain.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, std::vector<double> state, double t);

  const std::vector<double>& state() const noexcept { return state_; }
  double time() const noexcept { return t_; }

  /// Stream that produced the failure, when raised from inside the estimator.
  std::int64_t stream_id() const noexcept { return stream_id_; }
  void set_stream_id(std::int64_t id) noexcept { stream_id_ = id; }

 private:
  std::vector<double> state_;
  double t_;
  std::int64_t stream_id_ = -1;
};

/// Payoff produced a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The estimator refused a payoff because the growth policy is not satisfied.
class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pathfunc
