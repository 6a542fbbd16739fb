#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

using namespace effdim;
using namespace effdim::cli;

int main(int argc, char** argv) {
  CLI::App app{"Scale-dependent effective dimension of statistical models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool bits = false;
  unsigned threads = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides the config)");
  auto* out_opt = app.add_option("--out", out_path, "Output file");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_flag("--bits", bits, "Report complexities in bits");
  app.add_option("--threads", threads, "Worker threads (0 = auto)");

  auto* compute = app.add_subcommand("compute", "Effective dimension at one n");
  auto* sweep_n = app.add_subcommand("sweep-n", "Effective dimension over a sweep of n");
  auto* sweep_d = app.add_subcommand("sweep-d", "Effective dimension over a family of d");
  auto* validate = app.add_subcommand("validate", "Run the oracle suites");
  auto* plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
  std::string csv_in;
  plot->add_option("csv", csv_in, "Sweep CSV")->required();
  for (auto* sub : {compute, sweep_n, sweep_d, validate, plot}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CommandOptions options;
  options.threads = threads;
  options.bits = bits;
  if (*seed_opt) options.seed = seed;
  if (*out_opt) options.out = out_path;

  if (*validate) return cmd_validate(options, std::cout, std::cerr);
  if (*plot) {
    if (!options.out) {
      std::cerr << "error: plot needs --out PATH\n";
      return kExitValidation;
    }
    return cmd_plot(csv_in, *options.out, std::cerr);
  }

  if (config_path.empty()) {
    std::cerr << "error: --config PATH is required\n";
    return kExitValidation;
  }
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  if (*compute) return cmd_compute(config, options, std::cout, std::cerr);
  if (*sweep_n) return cmd_sweep_n(config, options, std::cout, std::cerr);
  return cmd_sweep_d(config, options, std::cout, std::cerr);
}
