#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace pathfunc::cli;
  CLI::App app{"Monte Carlo pricing of path functionals of diffusions"};
  app.require_subcommand(1);

  Overrides o;
  std::uint64_t seed = 0;
  std::size_t workers = 0, paths = 0;
  std::string format;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master seed (overrides run.seed)");
    sub->add_option("--workers", workers, "worker threads (overrides PATHFUNC_WORKERS and run.workers)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--paths", paths, "number of paths (overrides run.n_paths)")->check(CLI::PositiveNumber);
  };

  std::string config;
  std::string command;
  for (const char* name : {"price", "converge", "check"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", config, "config file")->required();
    sub->add_option("--format", format, "table or csv (overrides output.format)")
        ->check(CLI::IsMember({"table", "csv"}));
    add_common(sub);
    sub->callback([&command, name] { command = name; });
  }

  std::string ce_name;
  auto* ce = app.add_subcommand("counterexample", "tangency, bessel or strong");
  ce->add_option("name", ce_name)->required()->check(CLI::IsMember({"tangency", "bessel", "strong"}));
  add_common(ce);
  ce->callback([&command] { command = "counterexample"; });

  std::string path_a, path_b;
  std::size_t budget = 16;
  auto* sk = app.add_subcommand("skorohod-dist", "approximate Skorohod distance between two t,value CSV paths");
  sk->add_option("a", path_a)->required();
  sk->add_option("b", path_b)->required();
  sk->add_option("--budget", budget, "jump-matching search budget");
  sk->callback([&command] { command = "skorohod-dist"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfig;
  }

  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) o.seed = seed;
    if (sub->count("--workers")) o.workers = workers;
    if (sub->count("--paths")) o.n_paths = paths;
    if (sub->get_option_no_throw("--format") && sub->count("--format")) o.format = format;
  }

  if (command == "counterexample" || command == "skorohod-dist") {
    try {
      if (command == "counterexample") return cmd_counterexample(ce_name, o, std::cout, std::cerr);
      return cmd_skorohod_dist(path_a, path_b, budget, std::cout, std::cerr);
    } catch (const ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kRuntime;
    }
  }
  return run_config_command(command, config, o, std::cout, std::cerr);
}
