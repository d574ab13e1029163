#include "experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "csv.hpp"

namespace cachenet::cli {

using nlohmann::json;

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::domain_error(std::string("config is not valid JSON: ") + e.what());
  }
  return j;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::domain_error(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

Engine parse_engine(const std::string& name) {
  if (name == "exact") return Engine::exact;
  if (name == "upper") return Engine::upper;
  if (name == "asymptotic") return Engine::asymptotic;
  if (name == "montecarlo") return Engine::montecarlo;
  throw std::domain_error("unknown engine '" + name +
                          "' (expected exact|upper|asymptotic|montecarlo)");
}

ExperimentConfig load_config(const std::string& path) {
  const json j = load_json(path);
  ExperimentConfig cfg;

  const json net = j.value("network", json::object());
  cfg.net.lambda_b = get_or(net, "lambda_b", 1e-4);
  cfg.net.lambda_u = get_or(net, "lambda_u", 1e-3);
  cfg.net.beta = get_or(net, "beta", 4.0);
  cfg.net.antennas = get_or(net, "antennas", 1);
  if (net.contains("tau_db")) {
    cfg.net.tau = db_to_linear(net.at("tau_db").get<double>());
  } else {
    cfg.net.tau = get_or(net, "tau", 1.0);
  }
  cfg.net.tx_power_w = get_or(net, "tx_power_w", 6.3);
  if (net.contains("noise_dbm")) {
    cfg.net.noise_power_w = dbm_to_watts(net.at("noise_dbm").get<double>());
  }
  cfg.net.check();

  const json lib = j.value("content", json::object());
  cfg.library = content::ContentParams::make(
      get_or(lib, "files", 8), get_or(lib, "zipf_gamma", 1.0),
      get_or(lib, "cache_size", 2), get_or(lib, "backhaul_capability", 2));

  if (j.contains("allocation")) {
    const json a = j.at("allocation");
    content::FileAllocation alloc;
    alloc.cached = get_or(a, "cached", std::vector<int>{});
    alloc.backhaul = get_or(a, "backhaul", std::vector<int>{});
    std::sort(alloc.cached.begin(), alloc.cached.end());
    std::sort(alloc.backhaul.begin(), alloc.backhaul.end());
    cfg.alloc = std::move(alloc);
  }
  if (j.contains("placement")) {
    cfg.placement = content::CachePlacement{j.at("placement").get<std::vector<double>>()};
  }
  cfg.scheme = get_or(j, "scheme", std::string());
  if (!cfg.scheme.empty() && cfg.alloc.has_value()) {
    throw std::domain_error("config: give either a scheme or an explicit allocation");
  }
  if (cfg.alloc.has_value() != cfg.placement.has_value()) {
    throw std::domain_error("config: allocation and placement must come together");
  }
  if (!cfg.scheme.empty() && cfg.scheme != "mpc" && cfg.scheme != "uc" &&
      cfg.scheme != "iid" && cfg.scheme != "exact-opt" && cfg.scheme != "asym-opt") {
    throw std::domain_error("config: unknown scheme '" + cfg.scheme +
                            "' (expected mpc|uc|iid|exact-opt|asym-opt)");
  }

  if (j.contains("sweep")) {
    const json s = j.at("sweep");
    cfg.sweep_parameter = get_or(s, "parameter", std::string());
    cfg.sweep_values = get_or(s, "values", std::vector<double>{});
    if (cfg.sweep_parameter.empty()) {
      throw std::domain_error("config: sweep.parameter missing");
    }
    ExperimentConfig probe = cfg;  // reject unknown parameter names up front
    if (!cfg.sweep_values.empty()) apply_sweep_value(probe, cfg.sweep_values.front());
  }

  const json sim = j.value("sim", json::object());
  cfg.sim.realizations = get_or(sim, "realizations", static_cast<std::int64_t>(10000));
  cfg.sim.rng_seed = get_or(sim, "seed", static_cast<std::uint64_t>(1));
  cfg.sim.window_radius = get_or(sim, "window_radius", 0.0);
  cfg.sim.threads = get_or(sim, "threads", 1);
  const std::string metric = get_or(sim, "metric", std::string("sir"));
  if (metric == "sir") {
    cfg.sim.metric = mc::Metric::sir;
  } else if (metric == "sinr") {
    cfg.sim.metric = mc::Metric::sinr;
  } else {
    throw std::domain_error("config: sim.metric must be sir or sinr");
  }
  const std::string load_model = get_or(sim, "load_model", std::string("analytic"));
  if (load_model == "analytic") {
    cfg.sim.load_model = mc::LoadModel::analytic_pmf;
  } else if (load_model == "full-users") {
    cfg.sim.load_model = mc::LoadModel::full_users;
  } else {
    throw std::domain_error("config: sim.load_model must be analytic or full-users");
  }

  const json opt = j.value("optimizer", json::object());
  cfg.opt.max_iters = get_or(opt, "max_iters", 10000);
  cfg.opt.step0 = get_or(opt, "step0", 0.1);
  cfg.opt.tol = get_or(opt, "tol", 1e-6);

  cfg.engine = parse_engine(get_or(j, "engine", std::string("exact")));
  cfg.output = get_or(j, "output", std::string("out.csv"));
  return cfg;
}

void apply_sweep_value(ExperimentConfig& cfg, double value) {
  const std::string& p = cfg.sweep_parameter;
  const auto as_int = [&](const char* what) {
    const int v = static_cast<int>(std::llround(value));
    if (std::abs(value - v) > 1e-9) {
      throw std::domain_error(std::string("sweep value for ") + what +
                              " must be an integer");
    }
    return v;
  };
  if (p == "antennas") {
    cfg.net.antennas = as_int("antennas");
  } else if (p == "tau") {
    cfg.net.tau = value;
  } else if (p == "tau_db") {
    cfg.net.tau = db_to_linear(value);
  } else if (p == "lambda_u") {
    cfg.net.lambda_u = value;
  } else if (p == "lambda_b") {
    cfg.net.lambda_b = value;
  } else if (p == "beta") {
    cfg.net.beta = value;
  } else if (p == "zipf_gamma") {
    cfg.library = content::ContentParams::make(cfg.library.file_count, value,
                                               cfg.library.cache_size,
                                               cfg.library.backhaul_capability);
  } else if (p == "cache_size") {
    cfg.library = content::ContentParams::make(cfg.library.file_count,
                                               cfg.library.zipf_gamma, as_int("cache_size"),
                                               cfg.library.backhaul_capability);
  } else if (p == "backhaul_capability") {
    cfg.library = content::ContentParams::make(cfg.library.file_count,
                                               cfg.library.zipf_gamma,
                                               cfg.library.cache_size,
                                               as_int("backhaul_capability"));
  } else if (p == "files") {
    cfg.library = content::ContentParams::make(as_int("files"), cfg.library.zipf_gamma,
                                               cfg.library.cache_size,
                                               cfg.library.backhaul_capability);
  } else {
    throw std::domain_error("unknown sweep parameter '" + p + "'");
  }
  cfg.net.check();
}

ResolvedDesign resolve_design(const ExperimentConfig& cfg) {
  ResolvedDesign out;
  out.eval_params = cfg.library;
  if (cfg.alloc.has_value()) {
    out.alloc = *cfg.alloc;
    out.placement = *cfg.placement;
    const auto violations = content::validate(out.alloc, out.placement, out.eval_params);
    if (!violations.empty()) {
      throw std::domain_error("config: " + violations.front());
    }
    return out;
  }
  if (cfg.scheme.empty()) {
    throw std::domain_error("config: a scheme or an allocation/placement is required");
  }
  optimize::Solution sol;
  if (cfg.scheme == "exact-opt") {
    sol = optimize::optimize_full(cfg.net, cfg.library, cfg.opt);
  } else if (cfg.scheme == "asym-opt") {
    sol = optimize::optimize_asymptotic(cfg.net, cfg.library, cfg.opt);
  } else {
    const auto kind = cfg.scheme == "mpc"  ? optimize::BaselineKind::most_popular
                      : cfg.scheme == "uc" ? optimize::BaselineKind::uniform
                                           : optimize::BaselineKind::popularity_iid;
    sol = optimize::baseline_scheme(kind, cfg.net, cfg.library);
    out.eval_params = optimize::baseline_eval_params(kind, cfg.library);
  }
  out.alloc = std::move(sol.alloc);
  out.placement = std::move(sol.placement);
  out.solver_objective = sol.objective;
  out.iterations = sol.iterations;
  out.converged = sol.converged;
  return out;
}

namespace {

// Engine-dispatched analytic evaluation of one design.
analytic::StpBreakdown evaluate(const ExperimentConfig& cfg, const ResolvedDesign& design) {
  switch (cfg.engine) {
    case Engine::exact:
      return analytic::stp_total(design.alloc, design.placement, cfg.net,
                                 design.eval_params);
    case Engine::upper:
      return analytic::stp_total_upper(design.alloc, design.placement, cfg.net,
                                       design.eval_params);
    case Engine::asymptotic: {
      analytic::StpBreakdown bd = analytic::stp_total_upper(
          design.alloc, design.placement, cfg.net, design.eval_params);
      bd.ase = analytic::ase_upper_asymptotic(design.alloc, design.placement, cfg.net,
                                              design.eval_params);
      bd.total_stp =
          bd.ase / (cfg.net.lambda_b * analytic::kPerKm2 * std::log2(1.0 + cfg.net.tau));
      return bd;
    }
    case Engine::montecarlo:
      break;
  }
  throw std::domain_error("the montecarlo engine is served by the simulate command");
}

std::vector<double> sweep_points(const ExperimentConfig& cfg) {
  if (cfg.sweep_parameter.empty()) {
    throw std::domain_error("config: this command requires a sweep block");
  }
  return cfg.sweep_values;
}

}  // namespace

int cmd_analyze(const ExperimentConfig& cfg) {
  if (cfg.engine == Engine::montecarlo) {
    throw std::domain_error("analyze uses analytic engines; run simulate for montecarlo");
  }
  CsvWriter csv(cfg.output);
  std::vector<std::string> names{cfg.sweep_parameter, "stp", "ase"};
  const bool per_file = cfg.alloc.has_value();
  if (per_file) {
    for (int f : cfg.alloc->cached) names.push_back("stp_file_" + std::to_string(f));
  }
  csv.header(names);
  for (double value : sweep_points(cfg)) {
    ExperimentConfig at = cfg;
    apply_sweep_value(at, value);
    const ResolvedDesign design = resolve_design(at);
    const auto bd = evaluate(at, design);
    std::vector<double> row{value, bd.total_stp, bd.ase};
    if (per_file) {
      for (int f : cfg.alloc->cached) row.push_back(bd.per_cached_file.at(f));
    }
    csv.row(row);
  }
  return 0;
}

int cmd_optimize(const ExperimentConfig& cfg) {
  if (cfg.scheme.empty()) {
    throw std::domain_error("optimize requires a scheme (mpc|uc|iid|exact-opt|asym-opt)");
  }
  CsvWriter csv(cfg.output);
  csv.header({cfg.sweep_parameter, "ase", "solver_objective", "iterations", "converged"});
  json solutions = json::array();
  for (double value : sweep_points(cfg)) {
    ExperimentConfig at = cfg;
    apply_sweep_value(at, value);
    const ResolvedDesign design = resolve_design(at);
    const double exact_ase =
        analytic::stp_total(design.alloc, design.placement, at.net, design.eval_params).ase;
    csv.row({value, exact_ase, design.solver_objective,
             static_cast<double>(design.iterations),
             design.converged ? 1.0 : 0.0});
    json record;
    record["sweep_value"] = value;
    record["cached"] = design.alloc.cached;
    record["backhaul"] = design.alloc.backhaul;
    record["t"] = design.placement.t;
    record["ase"] = exact_ase;
    record["solver_objective"] = design.solver_objective;
    record["iterations"] = design.iterations;
    record["converged"] = design.converged;
    solutions.push_back(std::move(record));
  }
  std::ofstream sol_out(cfg.output + ".solutions.json", std::ios::binary);
  sol_out << solutions.dump(2) << '\n';
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
  if (cfg.sim.realizations < 1) {
    throw std::domain_error("simulate: sim.realizations must be >= 1");
  }
  CsvWriter csv(cfg.output);
  csv.header({cfg.sweep_parameter, "stp_mean", "stp_stderr", "ase_mean", "ase_stderr",
              "realizations", "window_warning"});
  for (double value : sweep_points(cfg)) {
    ExperimentConfig at = cfg;
    apply_sweep_value(at, value);
    const ResolvedDesign design = resolve_design(at);
    const auto stp =
        mc::simulate_stp(design.alloc, design.placement, at.net, design.eval_params, at.sim);
    const double factor =
        at.net.lambda_b * analytic::kPerKm2 * std::log2(1.0 + at.net.tau);
    csv.row({value, stp.overall.mean, stp.overall.stderr_, stp.overall.mean * factor,
             stp.overall.stderr_ * factor, static_cast<double>(stp.overall.n),
             stp.overall.window_warning ? 1.0 : 0.0});
  }
  return 0;
}

}  // namespace cachenet::cli
