#include "cachenet/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cachenet/load.hpp"
#include "cachenet/specfun.hpp"

namespace cachenet::optimize {

using analytic::NetworkParams;
using content::CachePlacement;
using content::ContentParams;
using content::FileAllocation;
using specfun::FileKind;

namespace {

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double clamp01(double v) { return std::max(0.0, std::min(1.0, v)); }

// Fast evaluator for the exact cached-file STP: the Toeplitz coefficients
// are affine in t, so they are tabulated at t = 0 and t = 1 once.
struct CachedStpTable {
  double l0_at0, l0_at1;
  std::vector<double> li_at0, li_at1;
  double tau_pow;

  explicit CachedStpTable(const NetworkParams& net) {
    l0_at0 = specfun::ell_coeff(0, 0.0, net.tau, net.beta, FileKind::cached);
    l0_at1 = specfun::ell_coeff(0, 1.0, net.tau, net.beta, FileKind::cached);
    li_at0.resize(static_cast<std::size_t>(net.antennas) - 1);
    li_at1.resize(li_at0.size());
    for (int i = 1; i < net.antennas; ++i) {
      li_at0[i - 1] = specfun::ell_coeff(i, 0.0, net.tau, net.beta, FileKind::cached);
      li_at1[i - 1] = specfun::ell_coeff(i, 1.0, net.tau, net.beta, FileKind::cached);
    }
    tau_pow = std::pow(net.tau, 2.0 / net.beta);
  }

  // First column of B(t) = (t + l_0(t)) I - tau^{2/beta} D(t).
  std::vector<double> matrix_column(double t) const {
    std::vector<double> g(li_at0.size() + 1);
    g[0] = t + (1.0 - t) * l0_at0 + t * l0_at1;
    for (std::size_t i = 0; i < li_at0.size(); ++i) {
      g[i + 1] = -tau_pow * ((1.0 - t) * li_at0[i] + t * li_at1[i]);
    }
    return g;
  }

  double stp(double t) const {
    if (t <= 0.0) return 0.0;
    const auto g = matrix_column(t);
    const auto inv = invert_column(g);
    double sum = 0.0;
    for (double v : inv) sum += v;
    return t * sum;
  }

  // First column of the inverse of the lower triangular Toeplitz matrix
  // generated by g.
  static std::vector<double> invert_column(const std::vector<double>& g) {
    std::vector<double> v(g.size());
    v[0] = 1.0 / g[0];
    for (std::size_t n = 1; n < g.size(); ++n) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= n; ++k) acc += g[k] * v[n - k];
      v[n] = -acc / g[0];
    }
    return v;
  }

  // Truncated column convolution: first column of the product of the
  // Toeplitz matrices generated by a and b.
  static std::vector<double> column_product(const std::vector<double>& a,
                                            const std::vector<double>& b) {
    std::vector<double> c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  }
};

// ASE contribution of the backhaul side, constant in t under a fixed
// allocation.
double backhaul_stp_constant(const FileAllocation& alloc, const NetworkParams& net,
                             const ContentParams& cp, double backhaul_stp) {
  double total = 0.0;
  for (int f : alloc.backhaul) {
    double weight = 0.0;
    if (cp.backhaul_capability > 0) {
      const auto pmf = load::backhaul_load_pmf(f, alloc.backhaul, cp.popularity,
                                               net.lambda_u, net.lambda_b);
      weight = load::admission_weight(pmf, cp.backhaul_capability);
    }
    total += cp.popularity[f - 1] * weight * backhaul_stp;
  }
  return total;
}

void require_partition(const FileAllocation& alloc, const ContentParams& cp) {
  CachePlacement zeros{std::vector<double>(alloc.cached.size(), 0.0)};
  const auto violations = content::validate(alloc, zeros, cp);
  if (!violations.empty()) {
    throw std::domain_error("optimize: infeasible allocation: " + violations.front());
  }
}

struct AscentProblem {
  std::function<double(const std::vector<double>&)> objective;  // ASE units
  std::function<std::vector<double>(const std::vector<double>&)> direction;
};

// Shared projected-ascent loop: diminishing base step with halving on
// objective decrease, stop on sup-norm stall or iteration cap.
Solution run_projected_ascent(const FileAllocation& alloc, const ContentParams& cp,
                              const OptimizerConfig& cfg, const AscentProblem& problem) {
  const std::size_t n_files = alloc.cached.size();
  std::vector<double> t(n_files, 1.0 / static_cast<double>(n_files));
  t = project_capped_simplex(t, cp.cache_size);
  double objective = problem.objective(t);

  Solution out;
  out.alloc = alloc;
  out.converged = false;
  int n = 1;
  for (; n <= cfg.max_iters; ++n) {
    const std::vector<double> d = problem.direction(t);
    double step = cfg.step0 / std::sqrt(static_cast<double>(n));
    bool accepted = false;
    std::vector<double> candidate;
    double candidate_objective = 0.0;
    for (int halving = 0; halving <= 20; ++halving) {
      candidate = t;
      for (std::size_t i = 0; i < n_files; ++i) candidate[i] += step * d[i];
      candidate = project_capped_simplex(std::move(candidate), cp.cache_size);
      candidate_objective = problem.objective(candidate);
      if (candidate_objective >= objective) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.converged = true;  // no ascent direction step improves
      break;
    }
    double movement = 0.0;
    for (std::size_t i = 0; i < n_files; ++i) {
      movement = std::max(movement, std::abs(candidate[i] - t[i]));
    }
    t = std::move(candidate);
    objective = candidate_objective;
    if (movement < cfg.tol) {
      out.converged = true;
      break;
    }
  }
  out.iterations = std::min(n, cfg.max_iters);
  out.placement.t = std::move(t);
  out.objective = objective;
  return out;
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& pool, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> combo(size);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == size) {
      out.push_back(combo);
      return;
    }
    for (int i = start; i < static_cast<int>(pool.size()); ++i) {
      combo[depth] = pool[i];
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace

std::vector<double> project_capped_simplex(std::vector<double> t_raw, double cap) {
  if (cap < 0.0) {
    throw std::domain_error("project_capped_simplex: cap must be >= 0");
  }
  double clamped_sum = 0.0;
  double hi = 0.0;
  for (double v : t_raw) {
    clamped_sum += clamp01(v);
    hi = std::max(hi, v);
  }
  if (clamped_sum <= cap) {
    for (double& v : t_raw) v = clamp01(v);
    return t_raw;
  }
  // Bisect keeping sum(lo) >= cap >= sum(hi); returning the hi endpoint
  // leaves the output feasible and makes re-projection a no-op.
  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + hi); ++iter) {
    const double u = 0.5 * (lo + hi);
    double sum = 0.0;
    for (double v : t_raw) sum += clamp01(v - u);
    (sum > cap ? lo : hi) = u;
  }
  for (double& v : t_raw) v = clamp01(v - hi);
  return t_raw;
}

std::vector<double> stp_derivative_column(const NetworkParams& net) {
  net.check();
  const double tau_pow = std::pow(net.tau, 2.0 / net.beta);
  std::vector<double> column(static_cast<std::size_t>(net.antennas));
  const double full0 = specfun::ell_coeff(0, 0.0, net.tau, net.beta, FileKind::cached);
  const double tail0 = specfun::ell_coeff(0, 1.0, net.tau, net.beta, FileKind::cached);
  column[0] = 1.0 - (full0 - tail0);
  for (int i = 1; i < net.antennas; ++i) {
    const double full = specfun::ell_coeff(i, 0.0, net.tau, net.beta, FileKind::cached);
    const double tail = specfun::ell_coeff(i, 1.0, net.tau, net.beta, FileKind::cached);
    column[i] = tau_pow * (full - tail);
  }
  return column;
}

double exact_ascent_direction_norm(double t, const NetworkParams& net) {
  net.check();
  const CachedStpTable table(net);
  const std::vector<double> deriv = stp_derivative_column(net);
  const auto inv = CachedStpTable::invert_column(table.matrix_column(t));
  const auto middle =
      CachedStpTable::column_product(CachedStpTable::column_product(inv, deriv), inv);
  double norm = 0.0;
  for (std::size_t k = 0; k < inv.size(); ++k) norm += std::abs(inv[k] - t * middle[k]);
  return norm;
}

Solution optimize_placement_exact(const FileAllocation& alloc, const NetworkParams& net,
                                  const ContentParams& cp, const OptimizerConfig& cfg) {
  net.check();
  require_partition(alloc, cp);
  const double factor = net.lambda_b * analytic::kPerKm2 * std::log2(1.0 + net.tau);
  const double backhaul_stp = analytic::stp_backhaul_exact(net);
  const double backhaul_ase =
      factor * backhaul_stp_constant(alloc, net, cp, backhaul_stp);
  if (alloc.cached.empty()) {
    Solution out;
    out.alloc = alloc;
    out.objective = backhaul_ase;
    out.converged = true;
    return out;
  }

  const CachedStpTable table(net);
  const std::vector<double> deriv = stp_derivative_column(net);

  AscentProblem problem;
  problem.objective = [&, factor, backhaul_ase](const std::vector<double>& t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      sum += cp.popularity[alloc.cached[i] - 1] * table.stp(t[i]);
    }
    return factor * sum + backhaul_ase;
  };
  problem.direction = [&, factor](const std::vector<double>& t) {
    std::vector<double> d(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto inv = CachedStpTable::invert_column(table.matrix_column(t[i]));
      const auto middle = CachedStpTable::column_product(
          CachedStpTable::column_product(inv, deriv), inv);
      double norm = 0.0;
      for (std::size_t k = 0; k < inv.size(); ++k) {
        norm += std::abs(inv[k] - t[i] * middle[k]);
      }
      d[i] = norm * factor * cp.popularity[alloc.cached[i] - 1];
    }
    return d;
  };

  Solution out = run_projected_ascent(alloc, cp, cfg, problem);
  out.objective = analytic::stp_total(out.alloc, out.placement, net, cp).ase;
  return out;
}

Solution optimize_placement_single_antenna(const FileAllocation& alloc,
                                           const NetworkParams& net,
                                           const ContentParams& cp) {
  if (net.antennas != 1) {
    throw std::domain_error("optimize_placement_single_antenna: requires a single antenna");
  }
  net.check();
  require_partition(alloc, cp);
  Solution out;
  out.alloc = alloc;
  out.converged = true;
  const std::size_t n_files = alloc.cached.size();
  if (n_files == 0) {
    out.objective = analytic::stp_total(out.alloc, out.placement, net, cp).ase;
    return out;
  }
  const auto [zeta1, zeta2] = specfun::zeta_coeffs(net.tau, net.beta);
  const double factor = net.lambda_b * analytic::kPerKm2 * std::log2(1.0 + net.tau);
  std::vector<double> weights(n_files);
  for (std::size_t i = 0; i < n_files; ++i) {
    weights[i] = factor * cp.popularity[alloc.cached[i] - 1];
  }
  const auto placement_at = [&](double dual) {
    std::vector<double> t(n_files);
    for (std::size_t i = 0; i < n_files; ++i) {
      t[i] = clamp01((std::sqrt(weights[i] * zeta2 / dual) - zeta2) / zeta1);
    }
    return t;
  };
  const auto mass = [&](double dual) {
    const auto t = placement_at(dual);
    return std::accumulate(t.begin(), t.end(), 0.0);
  };

  std::vector<double> t;
  if (cp.cache_size == 0) {
    t.assign(n_files, 0.0);
  } else if (static_cast<double>(n_files) <= cp.cache_size) {
    t.assign(n_files, 1.0);  // budget slack: the objective is increasing in t
  } else {
    // The placement mass is decreasing in the dual variable; bracket and
    // bisect to the budget.
    double hi = 0.0;
    for (double w : weights) hi = std::max(hi, w / zeta2);
    double lo = hi * 1e-18;
    while (mass(lo) < cp.cache_size) lo *= 0.5;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double m = mass(mid);
      if (std::abs(m - cp.cache_size) < 1e-12) {
        lo = hi = mid;
        break;
      }
      (m > cp.cache_size ? lo : hi) = mid;
    }
    t = placement_at(0.5 * (lo + hi));
  }
  out.placement.t = std::move(t);
  out.objective = analytic::stp_total(out.alloc, out.placement, net, cp).ase;
  return out;
}

Solution optimize_full(const NetworkParams& net, const ContentParams& cp,
                       const OptimizerConfig& cfg) {
  net.check();
  const int F = cp.file_count;
  const int size_lo = cp.cache_size;
  const int size_hi = F - cp.backhaul_capability;
  double candidate_count = 0.0;
  for (int size = size_lo; size <= size_hi; ++size) candidate_count += binomial(F, size);
  if (candidate_count > 1e6) {
    throw std::domain_error(
        "optimize_full: candidate allocation count exceeds 1e6; use optimize_asymptotic");
  }

  std::vector<int> pool(F);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<FileAllocation> candidates;
  for (int size = size_lo; size <= size_hi; ++size) {
    for (auto& cached : subsets_of_size(pool, size)) {
      FileAllocation alloc;
      alloc.cached = std::move(cached);
      for (int f = 1; f <= F; ++f) {
        if (!std::binary_search(alloc.cached.begin(), alloc.cached.end(), f)) {
          alloc.backhaul.push_back(f);
        }
      }
      candidates.push_back(std::move(alloc));
    }
  }

  std::vector<Solution> results(candidates.size());
  const auto solve_one = [&](std::size_t idx) {
    results[idx] = net.antennas == 1
                       ? optimize_placement_single_antenna(candidates[idx], net, cp)
                       : optimize_placement_exact(candidates[idx], net, cp, cfg);
  };
  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || candidates.size() < 2) {
    for (std::size_t i = 0; i < candidates.size(); ++i) solve_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < candidates.size();
             i = next.fetch_add(1)) {
          solve_one(i);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }

  // Deterministic reduction: candidates are ordered by size then
  // lexicographically, and ties keep the earliest.
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].objective > results[best].objective) best = i;
  }
  return results[best];
}

Solution optimize_placement_asymptotic(const FileAllocation& alloc,
                                       const NetworkParams& net, const ContentParams& cp,
                                       const OptimizerConfig& cfg) {
  net.check();
  require_partition(alloc, cp);
  const int B = cp.backhaul_capability;
  const double factor = net.lambda_b * analytic::kPerKm2 * std::log2(1.0 + net.tau);
  const int N = net.antennas;
  std::vector<double> theta_a(static_cast<std::size_t>(N)), theta_c(theta_a.size()),
      coeff(theta_a.size());
  for (int j = 1; j <= N; ++j) {
    const auto th = specfun::theta_coeffs(j, net.tau, net.beta, N);
    theta_a[j - 1] = th.theta_a;
    theta_c[j - 1] = th.theta_c;
    coeff[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * binomial(N, j);
  }
  const auto upper_stp = [&](double t) {
    if (t <= 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      sum += coeff[j] * t / (theta_a[j] * t + theta_c[j]);
    }
    return sum;
  };
  const auto upper_gradient = [&](double t) {
    double sum = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      const double den = theta_a[j] * t + theta_c[j];
      sum += coeff[j] * theta_c[j] / (den * den);
    }
    return sum;
  };

  double backhaul_ase = 0.0;
  if (!alloc.backhaul.empty() && B > 0) {
    const double weight =
        B / static_cast<double>(std::max<int>(static_cast<int>(alloc.backhaul.size()), B));
    double mass = 0.0;
    for (int f : alloc.backhaul) mass += cp.popularity[f - 1];
    backhaul_ase = factor * mass * weight * upper_stp(1.0);
  }
  if (alloc.cached.empty()) {
    Solution out;
    out.alloc = alloc;
    out.objective = backhaul_ase;
    out.converged = true;
    return out;
  }

  AscentProblem problem;
  problem.objective = [&, factor, backhaul_ase](const std::vector<double>& t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      sum += cp.popularity[alloc.cached[i] - 1] * upper_stp(t[i]);
    }
    return factor * sum + backhaul_ase;
  };
  problem.direction = [&, factor](const std::vector<double>& t) {
    std::vector<double> d(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      d[i] = upper_gradient(t[i]) * factor * cp.popularity[alloc.cached[i] - 1];
    }
    return d;
  };
  return run_projected_ascent(alloc, cp, cfg, problem);
}

Solution optimize_asymptotic(const NetworkParams& net, const ContentParams& cp,
                             const OptimizerConfig& cfg) {
  net.check();
  const int F = cp.file_count;
  const int B = std::min(cp.backhaul_capability, F);
  FileAllocation alloc;
  for (int f = 1; f <= B; ++f) alloc.backhaul.push_back(f);
  for (int f = B + 1; f <= F; ++f) alloc.cached.push_back(f);
  return optimize_placement_asymptotic(alloc, net, cp, cfg);
}

Solution baseline_scheme(BaselineKind kind, const NetworkParams& net,
                         const ContentParams& cp) {
  net.check();
  const int F = cp.file_count;
  const int B = cp.backhaul_capability;
  const int C = cp.cache_size;
  Solution out;
  out.converged = true;
  switch (kind) {
    case BaselineKind::most_popular: {
      for (int f = 1; f <= B; ++f) out.alloc.backhaul.push_back(f);
      for (int f = B + 1; f <= F; ++f) {
        out.alloc.cached.push_back(f);
        out.placement.t.push_back(f <= B + C ? 1.0 : 0.0);
      }
      break;
    }
    case BaselineKind::uniform: {
      const double marginal = static_cast<double>(B + C) / F;
      for (int f = 1; f <= F; ++f) {
        out.alloc.cached.push_back(f);
        out.placement.t.push_back(marginal);
      }
      break;
    }
    case BaselineKind::popularity_iid: {
      // Marginals proportional to popularity, capped at one, with total
      // mass B + C: scale found by bisection.
      const double target = B + C;
      double lo = 0.0, hi = 2.0 * target;
      const auto mass = [&](double scale) {
        double m = 0.0;
        for (double q : cp.popularity) m += std::min(1.0, scale * q);
        return m;
      };
      while (mass(hi) < target - 1e-12 && hi < 1e18) hi *= 2.0;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (mass(mid) < target ? lo : hi) = mid;
      }
      const double scale = 0.5 * (lo + hi);
      for (int f = 1; f <= F; ++f) {
        out.alloc.cached.push_back(f);
        out.placement.t.push_back(std::min(1.0, scale * cp.popularity[f - 1]));
      }
      break;
    }
    default:
      throw std::domain_error("baseline_scheme: unknown scheme");
  }
  out.objective =
      analytic::stp_total(out.alloc, out.placement, net, baseline_eval_params(kind, cp)).ase;
  return out;
}

content::ContentParams baseline_eval_params(BaselineKind kind,
                                            const content::ContentParams& cp) {
  if (kind == BaselineKind::most_popular) return cp;
  content::ContentParams merged = cp;
  merged.cache_size = cp.cache_size + cp.backhaul_capability;
  merged.backhaul_capability = 0;
  return merged;
}

}  // namespace cachenet::optimize
