// qnls: ground states, dynamics and potential-well experiments for the
// quadratic two-component NLS system.

#include <iostream>

#include <CLI11.hpp>

#include "qnls/cli.hpp"
#include "qnls/errors.hpp"

int main(int argc, char** argv) {
  using namespace qnls::cli;
  CLI::App app{"Quadratic-interaction NLS system: ground states, evolution and potential wells"};
  Flags flags;
  std::string config;
  std::string out = flags.out.string();
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("command", flags.command, "Experiment to run, or 'report' to index --out")
      ->required()
      ->check(CLI::IsMember(commands()));
  auto* config_opt = app.add_option("--config", config, "INI run configuration");
  app.add_option("--out", out, "Output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "Base random seed (overrides [run] seed)");
  app.add_flag("--exploratory", flags.exploratory, "Allow parameters outside the admissible cases");
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Exit::ok : Exit::validation;
  }
  flags.out = out;
  if (*seed_opt) flags.seed = seed;
  if (*threads_opt) flags.threads = threads;

  RunConfig cfg;
  try {
    if (*config_opt)
      cfg = RunConfig::load(config);
    else if (flags.command != "check" && flags.command != "report")
      throw qnls::ValidationError("--config is required for '" + flags.command + "'");
  } catch (const qnls::Error& e) {
    std::cerr << "qnls: " << e.what() << '\n';
    return Exit::validation;
  }
  return run(cfg, flags);
}
