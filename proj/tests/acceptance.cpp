// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every tolerance is pinned here; runtimes are reported per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <string>
#include <vector>

#include "cachenet/analytic.hpp"
#include "cachenet/content.hpp"
#include "cachenet/load.hpp"
#include "cachenet/montecarlo.hpp"
#include "cachenet/optimize.hpp"
#include "cachenet/rng.hpp"
#include "cachenet/specfun.hpp"
#include "oracles.hpp"

using namespace cachenet;
using Clock = std::chrono::steady_clock;

namespace {

int g_threads = 2;

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

analytic::NetworkParams make_net(int antennas, double tau, double beta,
                                 double lambda_u = 1e-3, double lambda_b = 1e-4) {
  analytic::NetworkParams net;
  net.antennas = antennas;
  net.tau = tau;
  net.beta = beta;
  net.lambda_u = lambda_u;
  net.lambda_b = lambda_b;
  return net;
}

// Eight-file reference configuration shared by the validation checks.
struct ReferenceDesign {
  content::ContentParams cp = content::ContentParams::make(8, 1.0, 2, 2);
  content::FileAllocation alloc{{5, 6, 7, 8}, {1, 2, 3, 4}};
  content::CachePlacement placement{{0.8, 0.6, 0.4, 0.2}};
};

// 1. Load pmf: DP vs literal subset enumeration, |F_b| <= 12, 200 draws.
Criterion criterion1() {
  Criterion c;
  Rng rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform() * 12);
    std::vector<int> set(n);
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) {
      set[i] = i + 1;
      q[i] = rng.uniform() / n;
    }
    const double ratio = std::pow(10.0, 3.0 * rng.uniform());
    const int requested = set[static_cast<int>(rng.uniform() * n)];
    const auto dp = load::backhaul_load_pmf(requested, set, q, ratio * 1e-4, 1e-4);
    const auto brute =
        load::backhaul_load_pmf_bruteforce(requested, set, q, ratio * 1e-4, 1e-4);
    for (int k = 1; k <= dp.size(); ++k) {
      const double err = std::abs(dp.prob(k) - brute.prob(k));
      c.require(err <= 1e-12, "pmf mismatch " + std::to_string(err));
    }
  }
  return c;
}

// 2. Toeplitz recurrence vs dense inversion with the explicit norm.
Criterion criterion2() {
  Criterion c;
  Rng rng(1002);
  for (int trial = 0; trial < 100; ++trial) {
    const int antennas = 1 + static_cast<int>(rng.uniform() * 16);
    const double tau = 0.1 + 5.0 * rng.uniform();
    const double beta = 2.5 + 3.5 * rng.uniform();
    const double t = 0.05 + 0.95 * rng.uniform();
    const auto net = make_net(antennas, tau, beta);
    const double via_recurrence = analytic::stp_cached_exact(t, net);

    const double l0 = specfun::ell_coeff(0, t, tau, beta, specfun::FileKind::cached);
    std::vector<double> ell(static_cast<std::size_t>(antennas) - 1);
    for (int i = 1; i < antennas; ++i) {
      ell[i - 1] = specfun::ell_coeff(i, t, tau, beta, specfun::FileKind::cached);
    }
    const double scale = std::pow(tau, 2.0 / beta) / (t + l0);
    const double via_dense =
        t / (t + l0) * oracles::dense_toeplitz_inv_l1norm(ell, scale);
    c.require(std::abs(via_recurrence - via_dense) <= 1e-10,
              "stp route mismatch " + std::to_string(via_recurrence - via_dense));
  }
  return c;
}

// 3. Single-antenna reduction of the matrix machinery to the closed form.
Criterion criterion3() {
  Criterion c;
  const double pinned = analytic::stp_cached_exact(1.0, make_net(1, 1.0, 4.0));
  c.require(std::abs(pinned - 1.0 / (1.0 + M_PI / 4.0)) <= 1e-10,
            "pinned single-antenna value off by " +
                std::to_string(pinned - 1.0 / (1.0 + M_PI / 4.0)));
  int points = 0;
  for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (double beta : {3.0, 3.5, 4.0, 4.5, 6.0})
      for (double t : {0.3, 0.7}) {
        const auto net = make_net(1, tau, beta);
        const auto z = specfun::zeta_coeffs(tau, beta);
        const double closed = t / (z.zeta1 * t + z.zeta2);
        const double matrix_path = analytic::stp_cached_exact(t, net);
        c.require(std::abs(matrix_path - closed) <= 1e-9, "reduction gap at tau=" +
                                                              std::to_string(tau));
        const double closed_b = 1.0 / (z.zeta1 + z.zeta2);
        c.require(std::abs(analytic::stp_backhaul_exact(net) - closed_b) <= 1e-9,
                  "backhaul reduction gap");
        ++points;
      }
  c.detail = std::to_string(points) + " grid points";
  if (!c.pass) c.detail = "";
  return c;
}

// 4. Monte Carlo vs the exact expression at the reference configuration.
Criterion criterion4() {
  Criterion c;
  ReferenceDesign ref;
  double worst_z = 0.0;
  for (int antennas : {1, 2, 4, 8}) {
    for (double tau : {0.25, 1.0, 4.0}) {
      const auto net = make_net(antennas, tau, 4.0);
      const auto expected = analytic::stp_total(ref.alloc, ref.placement, net, ref.cp);
      mc::SimConfig sim;
      sim.realizations = 100000;
      sim.rng_seed = 42;
      sim.threads = g_threads;
      const auto est = mc::simulate_stp(ref.alloc, ref.placement, net, ref.cp, sim);
      const double z = (est.overall.mean - expected.total_stp) / est.overall.stderr_;
      worst_z = std::max(worst_z, std::abs(z));
      c.require(std::abs(z) <= 2.0, "N=" + std::to_string(antennas) +
                                        " tau=" + std::to_string(tau) +
                                        " z=" + std::to_string(z));
      c.require(!est.overall.window_warning, "window warning tripped");
    }
  }
  if (c.pass) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max |z| = %.2f over 12 configs", worst_z);
    c.detail = buf;
  }
  return c;
}

// 5. Bound properties on a 1000-point grid plus the reference-config gap.
Criterion criterion5() {
  Criterion c;
  for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (double beta : {3.0, 3.5, 4.0, 5.0, 6.0})
      for (int antennas : {1, 2, 4, 8}) {
        const auto net = make_net(antennas, tau, beta);
        const auto bounds = analytic::cached_stp_bound_coeffs(net);
        c.require(bounds.nu_lo > 0.0 && bounds.nu_hi > 0.0, "nu positivity");
        c.require(bounds.mu_lo <= 1.0 + 1e-12 && bounds.mu_hi <= 1.0 + 1e-12,
                  "mu at most one");
        const double backhaul = analytic::stp_backhaul_exact(net);
        double prev = 0.0;
        for (int k = 1; k <= 10; ++k) {
          const double t = k / 10.0;
          const double exact = analytic::stp_cached_exact(t, net);
          const double upper = analytic::stp_cached_upper(t, net);
          c.require(upper >= exact - 1e-9, "upper bound below exact");
          c.require(t / (bounds.mu_lo * t + bounds.nu_lo) <= exact + 1e-9,
                    "lower sandwich violated");
          c.require(t / (bounds.mu_hi * t + bounds.nu_hi) >= exact - 1e-9,
                    "upper sandwich violated");
          c.require(exact >= prev - 1e-12, "monotonicity violated");
          c.require(exact <= backhaul + 1e-12, "backhaul ceiling violated");
          prev = exact;
        }
      }
  // tightness at the reference configuration
  for (int antennas : {2, 4, 8}) {
    const auto net = make_net(antennas, 1.0, 4.0);
    for (int k = 1; k <= 10; ++k) {
      const double t = k / 10.0;
      const double gap = analytic::stp_cached_upper(t, net) -
                         analytic::stp_cached_exact(t, net);
      c.require(gap < 0.05, "reference-config gap " + std::to_string(gap));
    }
  }
  return c;
}

// 6. Gradient checks: closed-form bound gradient and the matrix derivative.
Criterion criterion6() {
  Criterion c;
  Rng rng(1006);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const int antennas = 1 + static_cast<int>(rng.uniform() * 8);
    const auto net = make_net(antennas, 0.3 + 3.0 * rng.uniform(),
                              3.0 + 2.0 * rng.uniform());
    const double t = 0.05 + 0.9 * rng.uniform();
    const double fd = (analytic::stp_cached_upper(t + h, net) -
                       analytic::stp_cached_upper(t - h, net)) /
                      (2.0 * h);
    double closed = 0.0;
    for (int j = 1; j <= antennas; ++j) {
      const auto th = specfun::theta_coeffs(j, net.tau, net.beta, antennas);
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      const double binom = std::exp(std::lgamma(antennas + 1.0) - std::lgamma(j + 1.0) -
                                    std::lgamma(antennas - j + 1.0));
      const double den = th.theta_a * t + th.theta_c;
      closed += sign * binom * th.theta_c / (den * den);
    }
    c.require(std::abs(fd - closed) <= 1e-5 * std::abs(closed),
              "bound gradient rel err " + std::to_string((fd - closed) / closed));
  }
  // matrix derivative vs finite differences of the matrix entries
  for (int trial = 0; trial < 10; ++trial) {
    const int antennas = 1 + static_cast<int>(rng.uniform() * 8);
    const auto net = make_net(antennas, 0.3 + 3.0 * rng.uniform(),
                              3.0 + 2.0 * rng.uniform());
    const auto column = optimize::stp_derivative_column(net);
    const double t = 0.1 + 0.8 * rng.uniform();
    const double tau_pow = std::pow(net.tau, 2.0 / net.beta);
    for (int i = 0; i < antennas; ++i) {
      const auto entry = [&](double tt) {
        if (i == 0) {
          return tt +
                 specfun::ell_coeff(0, tt, net.tau, net.beta, specfun::FileKind::cached);
        }
        return -tau_pow *
               specfun::ell_coeff(i, tt, net.tau, net.beta, specfun::FileKind::cached);
      };
      const double fd = (entry(t + h) - entry(t - h)) / (2.0 * h);
      c.require(std::abs(fd - column[i]) <= 1e-8 * (1.0 + std::abs(column[i])),
                "matrix derivative entry mismatch");
    }
  }
  return c;
}

// 7. Optimizer consistency: closed form vs ascent, pruning, fixed allocation.
Criterion criterion7() {
  Criterion c;
  optimize::OptimizerConfig cfg;

  // (a) gradient projection vs water filling at one antenna
  Rng rng(1007);
  for (int trial = 0; trial < 20; ++trial) {
    const int F = 4 + static_cast<int>(rng.uniform() * 3);
    const int B = 1 + static_cast<int>(rng.uniform() * 2);
    const int C = 1 + static_cast<int>(rng.uniform() * std::min(2, F - B - 1));
    const auto cp = content::ContentParams::make(F, 0.3 + rng.uniform(), C, B);
    const auto net = make_net(1, 0.5 + 2.0 * rng.uniform(), 3.0 + 2.0 * rng.uniform(),
                              1e-3 * (0.5 + 5.0 * rng.uniform()));
    content::FileAllocation alloc;
    for (int f = 1; f <= B; ++f) alloc.backhaul.push_back(f);
    for (int f = B + 1; f <= F; ++f) alloc.cached.push_back(f);
    const auto ascent = optimize::optimize_placement_exact(alloc, net, cp, cfg);
    const auto closed = optimize::optimize_placement_single_antenna(alloc, net, cp);
    const double rel = std::abs(ascent.objective - closed.objective) / closed.objective;
    c.require(rel <= 1e-6, "ascent vs closed form rel gap " + std::to_string(rel));
    c.require(ascent.objective <= closed.objective * (1.0 + 1e-9),
              "ascent exceeded the closed-form optimum");
  }

  // (b) pruned enumeration vs the full unpruned search
  for (int F = 3; F <= 6; ++F)
    for (int B : {1, 2})
      for (int C : {1, 2}) {
        if (B + C > F) continue;
        const auto cp = content::ContentParams::make(F, 1.0, C, B);
        for (int antennas : {1, 2}) {
          if (antennas == 2 && F > 5) continue;  // keep the reference search quick
          const auto net = make_net(antennas, 1.0, 4.0);
          const auto pruned = optimize::optimize_full(net, cp, cfg);
          optimize::Solution best;
          best.objective = -1.0;
          for (int mask = 0; mask < (1 << F); ++mask) {
            content::FileAllocation alloc;
            for (int f = 1; f <= F; ++f) {
              (mask & (1 << (f - 1)) ? alloc.cached : alloc.backhaul).push_back(f);
            }
            const auto sol =
                antennas == 1
                    ? optimize::optimize_placement_single_antenna(alloc, net, cp)
                    : optimize::optimize_placement_exact(alloc, net, cp, cfg);
            if (sol.objective > best.objective) best = sol;
          }
          c.require(std::abs(pruned.objective - best.objective) <=
                        1e-9 * std::max(1.0, best.objective),
                    "pruned objective differs at F=" + std::to_string(F));
          c.require(pruned.alloc.cached == best.alloc.cached,
                    "pruned argmax differs at F=" + std::to_string(F) +
                        " B=" + std::to_string(B) + " C=" + std::to_string(C));
        }
      }

  // (c) the fixed backhaul prefix attains the enumerated maximum of the
  // asymptotic objective. Ties exist (any saturated cached file swaps with
  // a backhaul file at no cost), so attainment is the claim, not
  // uniqueness.
  for (int F : {4, 5, 6})
    for (int B : {1, 2})
      for (int C : {1, 2}) {
        if (B + C > F) continue;
        const auto cp = content::ContentParams::make(F, 0.6, C, B);
        for (int antennas : {2, 4}) {
          const auto net = make_net(antennas, 1.0, 4.0);
          const auto fixed = optimize::optimize_asymptotic(net, cp, cfg);
          double best = -1.0;
          for (int mask = 0; mask < (1 << F); ++mask) {
            content::FileAllocation alloc;
            for (int f = 1; f <= F; ++f) {
              (mask & (1 << (f - 1)) ? alloc.cached : alloc.backhaul).push_back(f);
            }
            const auto sol =
                optimize::optimize_placement_asymptotic(alloc, net, cp, cfg);
            best = std::max(best, sol.objective);
          }
          c.require(fixed.objective >= best - 1e-9 * std::max(1.0, best),
                    "fixed allocation misses the maximum at F=" + std::to_string(F) +
                        " B=" + std::to_string(B) + " C=" + std::to_string(C) +
                        " by " + std::to_string(best - fixed.objective));
        }
      }
  return c;
}

// 8. Figure trends at desk scale, analytic engines only.
Criterion criterion8() {
  Criterion c;
  optimize::OptimizerConfig cfg;
  cfg.threads = g_threads;
  ReferenceDesign ref;

  // asymptotic upper bound merges with the ASE at high user density (N=1)
  for (double lu : {6e-3, 8e-3, 1e-2}) {
    const auto net = make_net(1, 1.0, 4.0, lu);
    const double exact = analytic::stp_total(ref.alloc, ref.placement, net, ref.cp).ase;
    const double asym =
        analytic::ase_upper_asymptotic(ref.alloc, ref.placement, net, ref.cp);
    c.require(std::abs(asym - exact) / exact < 0.02,
              "asymptotic gap " + std::to_string((asym - exact) / exact) + " at lu=" +
                  std::to_string(lu));
  }

  // optimizer comparison across the user-density sweep
  {
    const auto cp = content::ContentParams::make(6, 0.6, 2, 2);
    for (double lu : {2e-3, 4e-3, 6e-3, 8e-3, 1e-2}) {
      const auto net = make_net(4, 1.0, 4.0, lu);
      const auto exact_opt = optimize::optimize_full(net, cp, cfg);
      const auto asym = optimize::optimize_asymptotic(net, cp, cfg);
      const double asym_ase =
          analytic::stp_total(asym.alloc, asym.placement, net, cp).ase;
      const double rel = std::abs(exact_opt.objective - asym_ase) / exact_opt.objective;
      c.require(rel < 0.02, "optimizer gap " + std::to_string(rel));
    }
  }

  // scheme ordering across the large-library sweeps
  const auto scheme_ase = [&](const std::string& scheme,
                              const analytic::NetworkParams& net,
                              const content::ContentParams& cp) {
    if (scheme == "asym") {
      const auto sol = optimize::optimize_asymptotic(net, cp, cfg);
      return analytic::stp_total(sol.alloc, sol.placement, net, cp).ase;
    }
    const auto kind = scheme == "mpc"  ? optimize::BaselineKind::most_popular
                      : scheme == "uc" ? optimize::BaselineKind::uniform
                                       : optimize::BaselineKind::popularity_iid;
    return optimize::baseline_scheme(kind, net, cp).objective;
  };
  const auto check_ordering = [&](const analytic::NetworkParams& net,
                                  const content::ContentParams& cp,
                                  const std::string& where) {
    const double asym = scheme_ase("asym", net, cp);
    const double mpc = scheme_ase("mpc", net, cp);
    const double iid = scheme_ase("iid", net, cp);
    const double uc = scheme_ase("uc", net, cp);
    c.require(asym >= mpc - 1e-12, "asym < mpc at " + where);
    c.require(mpc >= iid - 1e-12, "mpc < iid at " + where);
    c.require(iid >= uc - 1e-12, "iid < uc at " + where);
    return uc;
  };
  for (int antennas = 1; antennas <= 8; ++antennas) {
    check_ordering(make_net(antennas, 1.0, 4.0, 5e-3),
                   content::ContentParams::make(500, 0.6, 30, 20),
                   "N=" + std::to_string(antennas));
  }
  std::vector<double> uc_values;
  for (double gamma : {0.4, 0.6, 0.8, 1.0, 1.2}) {
    uc_values.push_back(check_ordering(make_net(8, 1.0, 4.0, 5e-3),
                                       content::ContentParams::make(500, gamma, 30, 20),
                                       "gamma=" + std::to_string(gamma)));
  }
  for (double uc : uc_values) {
    c.require(std::abs(uc - uc_values.front()) <= 1e-9 * uc_values.front(),
              "uniform scheme ASE varies with gamma");
  }
  for (int cache : {10, 20, 30, 40, 50, 60}) {
    check_ordering(make_net(8, 1.0, 4.0, 5e-3),
                   content::ContentParams::make(500, 0.6, cache, 20),
                   "C=" + std::to_string(cache));
  }
  for (int backhaul : {10, 20, 30, 40, 50}) {
    check_ordering(make_net(8, 1.0, 4.0, 5e-3),
                   content::ContentParams::make(500, 0.6, 30, backhaul),
                   "B=" + std::to_string(backhaul));
  }
  return c;
}

// 9. SIR vs SINR at the stated power and noise figures.
Criterion criterion9() {
  Criterion c;
  ReferenceDesign ref;
  auto net = make_net(4, 1.0, 4.0);
  net.tx_power_w = 6.3;
  net.noise_power_w = std::pow(10.0, (-97.5 - 30.0) / 10.0);
  mc::SimConfig sim;
  sim.realizations = 100000;
  sim.rng_seed = 9;
  sim.threads = g_threads;
  const auto sir = mc::simulate_stp(ref.alloc, ref.placement, net, ref.cp, sim);
  sim.metric = mc::Metric::sinr;
  const auto sinr = mc::simulate_stp(ref.alloc, ref.placement, net, ref.cp, sim);
  const double diff = std::abs(sir.overall.mean - sinr.overall.mean);
  c.require(diff < 0.01, "sir/sinr gap " + std::to_string(diff));
  if (c.pass) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "|gap| = %.2e", diff);
    c.detail = buf;
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      g_threads = std::max(1, std::atoi(argv[i + 1]));
    }
  }
  struct Entry {
    const char* name;
    Criterion (*run)();
  };
  const Entry entries[] = {
      {"1 load pmf: DP vs subset enumeration (<=1e-12)", criterion1},
      {"2 toeplitz recurrence vs dense inverse (<=1e-10)", criterion2},
      {"3 single-antenna reduction (<=1e-9, pinned <=1e-10)", criterion3},
      {"4 monte carlo vs exact stp (2 sigma at 1e5)", criterion4},
      {"5 bound properties on the parameter grid", criterion5},
      {"6 gradient checks (rel <1e-5; entrywise)", criterion6},
      {"7 optimizer consistency (a/b/c)", criterion7},
      {"8 figure trends at desk scale", criterion8},
      {"9 sir vs sinr equivalence (<0.01 at 1e5)", criterion9},
  };
  bool all = true;
  for (const auto& entry : entries) {
    const auto start = Clock::now();
    const Criterion result = entry.run();
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    all &= result.pass;
    std::printf("criterion %-52s %s%s%s  [%.1fs]\n", entry.name,
                result.pass ? "PASS" : "FAIL", result.detail.empty() ? "" : "  -- ",
                result.detail.c_str(), seconds);
  }
  return all ? 0 : 1;
}
