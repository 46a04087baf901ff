#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "pathfunc/pathfunc.hpp"

namespace pathfunc::cli {

enum ExitCode : int { kOk = 0, kRuntime = 1, kDiagnostic = 2, kConfig = 64 };

/// Command-line overrides shared by every command.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> format;
  std::optional<std::size_t> n_paths;
};

SdeModel build_model(const RunConfig& c);
SchemeConfig build_scheme(const RunConfig& c, const SdeModel& model);
FunctionalSpec build_functional(const RunConfig& c);

/// --workers, then PATHFUNC_WORKERS, then run.workers, then the CPU count.
std::size_t resolve_workers(const RunConfig& c, const Overrides& o);

int cmd_price(const RunConfig& c, const Overrides& o, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& c, const Overrides& o, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& c, const Overrides& o, std::ostream& out, std::ostream& err);
int cmd_counterexample(const std::string& name, const Overrides& o, std::ostream& out, std::ostream& err);
int cmd_skorohod_dist(const std::string& path_a, const std::string& path_b, std::size_t budget,
                      std::ostream& out, std::ostream& err);

/// Reads `t,value` rows (optional header) into a scalar step path.
StepPath read_path_csv(const std::string& path);

/// Loads the config, dispatches, and maps exceptions to exit codes.
int run_config_command(const std::string& command, const std::string& config_path, const Overrides& o,
                       std::ostream& out, std::ostream& err);

}  // namespace pathfunc::cli
