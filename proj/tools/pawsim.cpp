#include <CLI11.hpp>

#include <iostream>

#include "pawsim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pawsim: finite clock/rest universes and emergent time"};
  app.require_subcommand(1);

  pawsim::cli::RunOptions opts;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--out", opts.out_dir, "output directory (overrides PAWSIM_OUT_DIR and the config)");
    sub->add_option("--max-dim", opts.max_dim, "cap on the total Hilbert-space dimension");
    sub->add_option("--seed", opts.seed, "override seed_spec.rng_seed");
  };
  CLI::App* run = app.add_subcommand("run", "run a preset");
  add_common(run);
  CLI::App* sweep = app.add_subcommand("sweep", "run every point of a declared grid");
  add_common(sweep);
  CLI::App* list = app.add_subcommand("list-presets", "list presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pawsim::cli::kExitConfig;
  }

  if (list->parsed()) return pawsim::cli::cmd_list_presets(std::cout);
  if (run->parsed()) return pawsim::cli::cmd_run(config_path, opts, std::cerr);
  return pawsim::cli::cmd_sweep(config_path, opts, std::cerr);
}
