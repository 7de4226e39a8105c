#include <CLI11.hpp>

#include <iostream>

#include "microwidths/commands.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  double tolerance = 0.0;  // 0 = keep config value
  std::string scheme;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "experiment config file (key = value)");
  if (config_required) c->required();
  cmd->add_option("--out", opts.out_dir, "output directory for CSV/report files");
  cmd->add_option("--tolerance", opts.tolerance, "slope tolerance override");
  cmd->add_option("--scheme", opts.scheme, "allocation scheme: pq5|pq6|greedy");
}

microwidths::ExperimentConfig load(const CommonOpts& opts) {
  auto config = microwidths::parse_config_file(opts.config_path);
  if (opts.tolerance > 0.0) config.tolerance = opts.tolerance;
  if (!opts.scheme.empty()) config.scheme = microwidths::parse_scheme(opts.scheme);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"widths of compact embeddings between 2-microlocal weighted sequence spaces"};
  app.require_subcommand(1);

  CommonOpts rate_opts, verify_opts, count_opts, bound_opts, oracle_opts;
  bool selftest = false, saturation = false;

  auto* rate = app.add_subcommand("rate", "decay-exponent decision tables for a_k, c_k, d_k");
  add_common(rate, rate_opts);
  auto* verify = app.add_subcommand("verify", "fit measured slopes against the predicted exponent");
  add_common(verify, verify_opts, /*config_required=*/false);
  verify->add_flag("--selftest", selftest, "fit a synthetic power law instead of an experiment");
  verify->add_flag("--saturation", saturation, "repeat at J+2 and compare slopes");
  auto* count = app.add_subcommand("count", "dyadic cube counts N_ji and block sizes M_ji");
  add_common(count, count_opts);
  auto* bound = app.add_subcommand("bound", "upper/lower envelope curves for the truncation");
  add_common(bound, bound_opts);
  auto* oracle = app.add_subcommand("oracle", "exact diagonal s-numbers of the truncation");
  add_common(oracle, oracle_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? microwidths::kExitConfigError : microwidths::kExitOk;
  }

  try {
    if (rate->parsed()) return microwidths::run_rate(load(rate_opts), std::cout, rate_opts.out_dir);
    if (verify->parsed()) {
      microwidths::ExperimentConfig config;
      if (!verify_opts.config_path.empty())
        config = load(verify_opts);
      else if (!selftest) {
        std::cerr << "verify: --config is required unless --selftest is given\n";
        return microwidths::kExitConfigError;
      }
      return microwidths::run_verify(config, std::cout, verify_opts.out_dir, selftest, saturation);
    }
    if (count->parsed()) return microwidths::run_count(load(count_opts), std::cout, count_opts.out_dir);
    if (bound->parsed()) return microwidths::run_bound(load(bound_opts), std::cout, bound_opts.out_dir);
    if (oracle->parsed())
      return microwidths::run_oracle(load(oracle_opts), std::cout, oracle_opts.out_dir);
  } catch (const microwidths::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return microwidths::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return microwidths::kExitConfigError;
  }
  return microwidths::kExitOk;
}
