#include <iostream>

#include <CLI11.hpp>

#include "sqzres_cli/config.hpp"
#include "sqzres_cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Engineered squeezed reservoirs: beam, bath, wigner, design and validate experiments"};
  std::string config_path;
  std::string out_dir;
  bool strict = false;
  std::optional<int> n_max;
  std::optional<double> dt;
  app.add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_flag("--strict", strict, "Treat regime and truncation advisories as errors (exit 2)");
  app.add_option("--nmax", n_max, "Fock truncation n_max")->check(CLI::PositiveNumber);
  app.add_option("--dt", dt, "RK4 time step in units of 1/g")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : sqzres::cli::kFailure;
  }

  sqzres::cli::RunConfig cfg;
  try {
    cfg = sqzres::cli::load_config(config_path);
  } catch (const std::exception& ex) {
    std::cerr << config_path << ": " << ex.what() << "\n";
    return sqzres::cli::kFailure;
  }
  if (n_max) sqzres::cli::override_n_max(cfg, *n_max);
  if (dt) sqzres::cli::override_dt(cfg, *dt);

  sqzres::cli::RunOptions opts;
  opts.out_dir = out_dir;
  opts.strict = strict;
  return sqzres::cli::run(cfg, opts, std::cout, std::cerr);
}
