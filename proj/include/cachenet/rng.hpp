#pragma once

#include <cmath>
#include <cstdint>

namespace cachenet {

// Counter-based random stream: each (seed, stream) pair yields an
// independent xoshiro256++ generator, so simulation realizations can be
// assigned fixed streams and reproduce regardless of thread scheduling.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exp(1).
  double exponential() { return -std::log1p(-uniform()); }

  // Gamma(k, 1) for integer shape k, as a sum of exponentials.
  double gamma_int(int shape) {
    double g = 0.0;
    for (int i = 0; i < shape; ++i) g += exponential();
    return g;
  }

  // Poisson(mean) via Knuth's product method, chunked so the running
  // product stays far from the denormal range for large means.
  std::int64_t poisson(double mean) {
    std::int64_t count = 0;
    while (mean > 500.0) {
      count += poisson_small(500.0);
      mean -= 500.0;
    }
    return count + poisson_small(mean);
  }

 private:
  std::int64_t poisson_small(double mean) {
    const double limit = std::exp(-mean);
    double product = uniform();
    std::int64_t k = 0;
    while (product > limit) {
      product *= uniform();
      ++k;
    }
    return k;
  }

  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_[4];
};

}  // namespace cachenet
