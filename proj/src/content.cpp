#include "cachenet/content.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cachenet::content {

ContentParams ContentParams::make(int file_count, double zipf_gamma, int cache_size,
                                  int backhaul_capability) {
  if (file_count < 1) {
    throw std::domain_error("ContentParams: file count must be >= 1");
  }
  if (zipf_gamma < 0.0) {
    throw std::domain_error("ContentParams: Zipf exponent must be >= 0");
  }
  if (cache_size < 0 || backhaul_capability < 0) {
    throw std::domain_error("ContentParams: cache size and backhaul capability must be >= 0");
  }
  if (cache_size + backhaul_capability > file_count) {
    throw std::domain_error("ContentParams: B + C must not exceed the file count");
  }
  ContentParams p;
  p.file_count = file_count;
  p.zipf_gamma = zipf_gamma;
  p.cache_size = cache_size;
  p.backhaul_capability = backhaul_capability;
  p.popularity = zipf_popularity(file_count, zipf_gamma);
  return p;
}

double CachePlacement::sum() const {
  return std::accumulate(t.begin(), t.end(), 0.0);
}

std::vector<double> zipf_popularity(int file_count, double gamma) {
  if (file_count < 1) {
    throw std::domain_error("zipf_popularity: file count must be >= 1");
  }
  std::vector<double> q(file_count);
  double norm = 0.0;
  for (int f = 1; f <= file_count; ++f) {
    q[f - 1] = std::pow(static_cast<double>(f), -gamma);
    norm += q[f - 1];
  }
  for (double& v : q) v /= norm;
  return q;
}

std::vector<std::string> validate(const FileAllocation& alloc,
                                  const CachePlacement& placement,
                                  const ContentParams& params) {
  std::vector<std::string> violations;
  const int F = params.file_count;

  std::vector<int> seen(F + 1, 0);
  bool out_of_range = false;
  for (int f : alloc.cached) {
    if (f < 1 || f > F) { out_of_range = true; continue; }
    ++seen[f];
  }
  for (int f : alloc.backhaul) {
    if (f < 1 || f > F) { out_of_range = true; continue; }
    ++seen[f];
  }
  if (out_of_range) violations.push_back("allocation references files outside 1..F");
  bool overlap = false, missing = false;
  for (int f = 1; f <= F; ++f) {
    if (seen[f] > 1) overlap = true;
    if (seen[f] == 0) missing = true;
  }
  if (overlap) violations.push_back("cached and backhaul sets are not disjoint");
  if (missing) violations.push_back("cached and backhaul sets do not cover 1..F");

  if (placement.t.size() != alloc.cached.size()) {
    violations.push_back("placement length does not match the cached set");
  } else {
    bool box_ok = true;
    for (double v : placement.t) {
      if (!(v >= 0.0 && v <= 1.0)) box_ok = false;
    }
    if (!box_ok) violations.push_back("caching probabilities must lie in [0, 1]");
    if (placement.sum() > params.cache_size + 1e-9) {
      violations.push_back("caching probabilities sum above the cache size");
    }
  }
  return violations;
}

std::vector<int> sample_cache_contents(const std::vector<int>& files,
                                       const std::vector<double>& t,
                                       int cache_size, double u) {
  if (files.size() != t.size()) {
    throw std::domain_error("sample_cache_contents: files and t differ in length");
  }
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::domain_error("sample_cache_contents: draw must lie in [0, 1)");
  }
  double total = 0.0;
  for (double v : t) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("sample_cache_contents: probabilities must lie in [0, 1]");
    }
    total += v;
  }
  if (total > cache_size + 1e-9) {
    throw std::domain_error("sample_cache_contents: probabilities sum above the cache size");
  }

  std::vector<int> selected;
  selected.reserve(static_cast<std::size_t>(std::ceil(total)));
  double segment_start = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double lo = segment_start;
    const double hi = segment_start + t[k];
    segment_start = hi;
    if (t[k] <= 0.0) continue;
    if (systematic_hit(lo, hi, u)) selected.push_back(files[k]);
  }
  return selected;
}

bool systematic_hit(double lo, double hi, double u) {
  // The point u + j lands in [lo, hi) iff the smallest integer j >= lo - u
  // satisfies u + j < hi; segments are at most unit length, so at most one
  // point can hit.
  const double j = std::max(0.0, std::ceil(lo - u));
  return u + j < hi;
}

std::vector<int> sample_cache_contents(const FileAllocation& alloc,
                                       const CachePlacement& placement,
                                       int cache_size, double u) {
  return sample_cache_contents(alloc.cached, placement.t, cache_size, u);
}

}  // namespace cachenet::content
