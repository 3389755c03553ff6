#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"
#include "effpot/errors.hpp"

int main(int argc, char** argv) {
  namespace cli = effpot::cli;
  CLI::App app{"Landscape function, Agmon distances and localized eigenpairs on lattice grids"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed_base = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  auto* threads_opt = app.add_option("--threads", threads, "worker threads for ensemble runs");
  auto* seed_opt = app.add_option("--seed-base", seed_base, "replace every seed in the configuration");
  for (const auto& name : cli::subcommands()) app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cli::RunConfig config;
  try {
    config = cli::load_config(config_path);
  } catch (const effpot::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (!out_dir.empty()) config.out = out_dir;
  if (threads_opt->count() > 0) {
    if (threads < 0) {
      std::cerr << "error: --threads must be >= 0\n";
      return 2;
    }
    config.ensemble.threads = threads;
  }
  if (seed_opt->count() > 0) cli::apply_seed_base(config, seed_base);

  return cli::run_subcommand(app.get_subcommands().front()->get_name(), config, std::cout);
}
