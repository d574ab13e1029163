#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cachenet/analytic.hpp"
#include "cachenet/content.hpp"
#include "cachenet/montecarlo.hpp"
#include "cachenet/optimize.hpp"

namespace cachenet::cli {

enum class Engine { exact, upper, asymptotic, montecarlo };

Engine parse_engine(const std::string& name);

struct ExperimentConfig {
  analytic::NetworkParams net;
  content::ContentParams library;
  std::optional<content::FileAllocation> alloc;
  std::optional<content::CachePlacement> placement;
  std::string scheme;  // "", mpc, uc, iid, exact-opt, asym-opt
  std::string sweep_parameter;
  std::vector<double> sweep_values;
  Engine engine = Engine::exact;
  mc::SimConfig sim;
  optimize::OptimizerConfig opt;
  std::string output = "out.csv";
};

// Parses the JSON config file; throws std::domain_error on schema or value
// problems.
ExperimentConfig load_config(const std::string& path);

// Applies one sweep value to the named parameter, revalidating content
// parameters (popularity is rebuilt when it changes).
void apply_sweep_value(ExperimentConfig& cfg, double value);

// The design a config row evaluates: an explicit allocation/placement or
// the scheme's output, together with the parameters it is evaluated under.
struct ResolvedDesign {
  content::FileAllocation alloc;
  content::CachePlacement placement;
  content::ContentParams eval_params;
  double solver_objective = 0.0;
  int iterations = 0;
  bool converged = true;
};

ResolvedDesign resolve_design(const ExperimentConfig& cfg);

int cmd_analyze(const ExperimentConfig& cfg);
int cmd_optimize(const ExperimentConfig& cfg);
int cmd_simulate(const ExperimentConfig& cfg);

struct FigureOptions {
  std::string scale = "desk";  // desk | full
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;  // empty selects figure_<id>.csv
};

int cmd_reproduce_figure(const std::string& figure_id, const FigureOptions& options);

// Valid figure identifiers, for usage errors and help text.
std::vector<std::string> figure_ids();

}  // namespace cachenet::cli
