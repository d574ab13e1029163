#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "cachenet/errors.hpp"
#include "experiment.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_override;
  std::string engine_override;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", flags.out_override, "output CSV path");
  cmd->add_option("--engine", flags.engine_override,
                  "exact | upper | asymptotic | montecarlo");
  cmd->add_option("--seed", flags.seed, "simulation seed")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--threads", flags.threads, "worker threads (simulation, search)");
}

cachenet::cli::ExperimentConfig make_config(const CommonFlags& flags) {
  auto cfg = cachenet::cli::load_config(flags.config_path);
  if (!flags.out_override.empty()) cfg.output = flags.out_override;
  if (!flags.engine_override.empty()) {
    cfg.engine = cachenet::cli::parse_engine(flags.engine_override);
  }
  if (flags.seed_set) cfg.sim.rng_seed = flags.seed;
  if (flags.threads > 0) {
    cfg.sim.threads = flags.threads;
    cfg.opt.threads = flags.threads;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Successful-transmission probability and area spectrum efficiency of "
               "random caching in backhaul-limited multi-antenna cellular networks"};
  app.require_subcommand(1);

  CommonFlags analyze_flags, optimize_flags, simulate_flags;
  auto* analyze = app.add_subcommand("analyze", "closed-form STP/ASE over a sweep");
  add_common_flags(analyze, analyze_flags);
  auto* optimize =
      app.add_subcommand("optimize", "run a caching scheme or optimizer over a sweep");
  add_common_flags(optimize, optimize_flags);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo STP/ASE over a sweep");
  add_common_flags(simulate, simulate_flags);

  std::string figure_id;
  cachenet::cli::FigureOptions figure_options;
  auto* reproduce = app.add_subcommand("reproduce-figure", "emit a bundled experiment "
                                       "preset as CSV plus a gnuplot script");
  reproduce->add_option("figure", figure_id, "preset id: 2a 2b 3 4 5a 5b 6a 6b")
      ->required();
  reproduce->add_option("--scale", figure_options.scale, "desk | full");
  reproduce->add_option("--seed", figure_options.seed, "simulation seed");
  reproduce->add_option("--threads", figure_options.threads, "worker threads");
  reproduce->add_option("--out", figure_options.output, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return cachenet::cli::cmd_analyze(make_config(analyze_flags));
    if (optimize->parsed()) {
      return cachenet::cli::cmd_optimize(make_config(optimize_flags));
    }
    if (simulate->parsed()) {
      auto cfg = make_config(simulate_flags);
      cfg.engine = cachenet::cli::Engine::montecarlo;
      return cachenet::cli::cmd_simulate(cfg);
    }
    if (reproduce->parsed()) {
      return cachenet::cli::cmd_reproduce_figure(figure_id, figure_options);
    }
  } catch (const cachenet::NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
