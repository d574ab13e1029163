#pragma once

#include <vector>

#include "cachenet/analytic.hpp"
#include "cachenet/content.hpp"

namespace cachenet::optimize {

struct OptimizerConfig {
  int max_iters = 10000;
  double step0 = 0.1;     // base step; s(n) = step0 / sqrt(n) with backtracking
  double tol = 1e-6;      // sup-norm change of t between iterates
  int threads = 1;        // subset-level parallelism in optimize_full
};

struct Solution {
  content::FileAllocation alloc;
  content::CachePlacement placement;
  double objective = 0.0;  // ASE in bit/s/Hz/km^2 (see each optimizer)
  int iterations = 0;
  bool converged = false;
};

// Euclidean projection onto {t in [0,1]^n : sum t <= cap}: clamp to the
// box, and when the budget is exceeded shift by the waterline u* solving
// sum clamp01(t_i - u*) = cap (bisection to 1e-10).
std::vector<double> project_capped_simplex(std::vector<double> t_raw, double cap);

// First column of the constant lower triangular Toeplitz derivative of the
// per-file STP matrix with respect to the caching probability:
// (1 - k_0, k_1, ..., k_{N-1}).
std::vector<double> stp_derivative_column(const analytic::NetworkParams& net);

// Magnitude of the ascent direction used by optimize_placement_exact for
// one file at caching probability t (before the popularity and ASE
// factors): || B^{-1} - t B^{-1} (dB/dt) B^{-1} ||_1. Where the inverse
// stays entrywise nonnegative this equals d/dt of the cached-file STP.
double exact_ascent_direction_norm(double t, const analytic::NetworkParams& net);

// Projected gradient ascent on the exact cached-file STP objective under a
// fixed allocation. Solution.objective is the full exact ASE.
Solution optimize_placement_exact(const content::FileAllocation& alloc,
                                  const analytic::NetworkParams& net,
                                  const content::ContentParams& cp,
                                  const OptimizerConfig& cfg);

// Closed-form water-filling placement for single-antenna networks;
// requires net.antennas == 1. Solution.objective is the full exact ASE.
Solution optimize_placement_single_antenna(const content::FileAllocation& alloc,
                                           const analytic::NetworkParams& net,
                                           const content::ContentParams& cp);

// Exhaustive allocation search over cached-set sizes C..F-B with the
// placement solved per candidate set. Guarded to at most 1e6 candidate
// sets; beyond that use optimize_asymptotic.
Solution optimize_full(const analytic::NetworkParams& net,
                       const content::ContentParams& cp, const OptimizerConfig& cfg);

// Projected gradient ascent on the high-user-density upper-bound
// objective under a fixed allocation. Solution.objective is that
// upper-bound ASE.
Solution optimize_placement_asymptotic(const content::FileAllocation& alloc,
                                       const analytic::NetworkParams& net,
                                       const content::ContentParams& cp,
                                       const OptimizerConfig& cfg);

// High-user-density design: backhaul set fixed to the B most popular
// files, placement from optimize_placement_asymptotic. Solution.objective
// is the upper-bound ASE.
Solution optimize_asymptotic(const analytic::NetworkParams& net,
                             const content::ContentParams& cp,
                             const OptimizerConfig& cfg);

enum class BaselineKind { most_popular, uniform, popularity_iid };

// Reference schemes. most_popular is deterministic: top-B files on the
// backhaul, the next C cached with probability one, the rest allocated to
// the cached set with probability zero. uniform / popularity_iid have no
// common deterministic placement; they are represented by their induced
// per-file marginals (uniform: (B+C)/F; popularity_iid: capped
// proportional to popularity with total mass B+C), which both the
// analytic evaluation and the simulator consume. Solution.objective is
// the exact ASE of the induced design.
Solution baseline_scheme(BaselineKind kind, const analytic::NetworkParams& net,
                         const content::ContentParams& cp);

// Parameters under which a baseline solution is evaluated or simulated.
// The marginal-represented schemes (uniform, popularity_iid) select up to
// B + C files per BS with no separate backhaul stage, so their budget is
// B + C and their backhaul capability is zero; most_popular keeps the
// original parameters.
content::ContentParams baseline_eval_params(BaselineKind kind,
                                            const content::ContentParams& cp);

}  // namespace cachenet::optimize
