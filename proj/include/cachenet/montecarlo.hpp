#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cachenet/analytic.hpp"
#include "cachenet/content.hpp"
#include "cachenet/rng.hpp"

namespace cachenet::mc {

enum class Metric { sir, sinr };

// How the backhaul contention at the tagged BS is sampled: from the
// analytic request-count pmf (the model the closed forms are built on),
// or by instantiating the user point process and the tagged cell's
// request set (informational cross-check of that model).
enum class LoadModel { analytic_pmf, full_users };

struct SimConfig {
  double window_radius = 0.0;  // meters; 0 selects 20 / sqrt(pi lambda_b)
  std::int64_t realizations = 0;
  std::uint64_t rng_seed = 1;
  Metric metric = Metric::sir;
  LoadModel load_model = LoadModel::analytic_pmf;
  int threads = 1;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
  bool window_warning = false;  // serving BS absent in >1% of cached requests
};

struct StpSimResult {
  Estimate overall;
  std::map<int, Estimate> per_file;  // conditioned on the file being requested
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Homogeneous PPP on a disk of the given radius centered at the origin.
std::vector<Point> sample_ppp(double lambda, double radius, Rng& rng);

// Empirical STP of the typical user at the origin. Per realization: BS
// PPP on the window, per-BS random caches with the placement marginals,
// request drawn from the popularity vector, content-centric association
// for cached files and nearest-BS association plus backhaul admission for
// backhaul files, MRT gains (serving Gamma(N,1), interferers Exp(1)).
// Realizations use counter-based RNG streams, so results are bit
// reproducible for a given seed at any thread count.
StpSimResult simulate_stp(const content::FileAllocation& alloc,
                          const content::CachePlacement& placement,
                          const analytic::NetworkParams& net,
                          const content::ContentParams& cp, const SimConfig& sim);

// lambda_b * STP * log2(1 + tau) in bit/s/Hz/km^2, with the standard
// error scaled accordingly.
Estimate simulate_ase(const content::FileAllocation& alloc,
                      const content::CachePlacement& placement,
                      const analytic::NetworkParams& net,
                      const content::ContentParams& cp, const SimConfig& sim);

namespace detail {

// Index of the nearest point with holds[i] != 0, or -1 when none exists.
int serving_index(const std::vector<double>& r2, const std::vector<char>& holds);

// Whether the systematic-sampling point set {u, u+1, ...} hits the
// segment [lo, hi); shared with content::sample_cache_contents.
bool segment_hit(double lo, double hi, double u);

}  // namespace detail

}  // namespace cachenet::mc
