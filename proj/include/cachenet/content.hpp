#pragma once

#include <string>
#include <vector>

namespace cachenet::content {

// File library. Files are 1-based and sorted by popularity (index 1 is the
// most popular file), so popularity[f-1] = q_f.
struct ContentParams {
  int file_count = 0;
  double zipf_gamma = 0.0;
  int cache_size = 0;            // C
  int backhaul_capability = 0;   // B
  std::vector<double> popularity;

  static ContentParams make(int file_count, double zipf_gamma, int cache_size,
                            int backhaul_capability);
};

// Partition of {1..F} into the cached file set and the backhaul file set.
// Both vectors hold sorted 1-based file indices.
struct FileAllocation {
  std::vector<int> cached;
  std::vector<int> backhaul;
};

// Caching probabilities, aligned with FileAllocation::cached: t[k] is the
// probability that a BS stores cached[k].
struct CachePlacement {
  std::vector<double> t;

  double sum() const;
};

// Zipf popularity vector: q_f = f^{-gamma} / sum_i i^{-gamma}.
std::vector<double> zipf_popularity(int file_count, double gamma);

// Returns all violated constraints (partition, box, budget); empty means
// the pair is feasible for the given parameters.
std::vector<std::string> validate(const FileAllocation& alloc,
                                  const CachePlacement& placement,
                                  const ContentParams& params);

// One BS's cache contents under random caching with marginals t,
// generated from a single uniform draw u in [0, 1) by systematic interval
// sampling: segments of length t[k] are laid consecutively on [0, sum t)
// and every segment hit by one of the points u, u+1, u+2, ... is selected.
// Each file is selected with probability exactly t[k] and at most
// ceil(sum t) <= cache_size distinct files are returned.
std::vector<int> sample_cache_contents(const std::vector<int>& files,
                                       const std::vector<double>& t,
                                       int cache_size, double u);

std::vector<int> sample_cache_contents(const FileAllocation& alloc,
                                       const CachePlacement& placement,
                                       int cache_size, double u);

// Whether the systematic point set {u, u+1, u+2, ...} hits the segment
// [lo, hi) with hi - lo <= 1; the membership predicate behind
// sample_cache_contents, shared with the simulator.
bool systematic_hit(double lo, double hi, double u);

}  // namespace cachenet::content
