#include "cachenet/load.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cachenet::load {

namespace {

std::vector<double> other_request_probs(int requested_file,
                                        const std::vector<int>& backhaul_set,
                                        const std::vector<double>& popularity,
                                        double lambda_u, double lambda_b) {
  if (std::find(backhaul_set.begin(), backhaul_set.end(), requested_file) ==
      backhaul_set.end()) {
    throw std::domain_error("backhaul_load_pmf: requested file is not in the backhaul set");
  }
  std::vector<double> probs;
  probs.reserve(backhaul_set.size() - 1);
  for (int f : backhaul_set) {
    if (f == requested_file) continue;
    if (f < 1 || static_cast<std::size_t>(f) > popularity.size()) {
      throw std::domain_error("backhaul_load_pmf: file index outside the popularity vector");
    }
    probs.push_back(request_prob(popularity[f - 1], lambda_u, lambda_b));
  }
  return probs;
}

}  // namespace

double request_prob(double q_i, double lambda_u, double lambda_b) {
  if (!(lambda_u > 0.0) || !(lambda_b > 0.0)) {
    throw std::domain_error("request_prob: densities must be positive");
  }
  if (!(q_i >= 0.0 && q_i <= 1.0)) {
    throw std::domain_error("request_prob: popularity must lie in [0, 1]");
  }
  return 1.0 - std::pow(1.0 + q_i * lambda_u / (3.5 * lambda_b), -4.5);
}

std::vector<double> poisson_binomial_pmf(const std::vector<double>& probs) {
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t support = 0;
  for (double p : probs) {
    ++support;
    for (std::size_t k = support; k > 0; --k) {
      pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
    }
    pmf[0] *= 1.0 - p;
  }
  return pmf;
}

LoadPmf backhaul_load_pmf(int requested_file, const std::vector<int>& backhaul_set,
                          const std::vector<double>& popularity, double lambda_u,
                          double lambda_b) {
  const std::vector<double> others =
      other_request_probs(requested_file, backhaul_set, popularity, lambda_u, lambda_b);
  return {poisson_binomial_pmf(others)};
}

LoadPmf backhaul_load_pmf_bruteforce(int requested_file,
                                     const std::vector<int>& backhaul_set,
                                     const std::vector<double>& popularity,
                                     double lambda_u, double lambda_b) {
  if (backhaul_set.size() > 20) {
    throw std::domain_error("backhaul_load_pmf_bruteforce: set too large for enumeration");
  }
  const std::vector<double> others =
      other_request_probs(requested_file, backhaul_set, popularity, lambda_u, lambda_b);
  const std::size_t n = others.size();
  std::vector<double> pmf(n + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double p = 1.0;
    int requested = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        p *= others[i];
        ++requested;
      } else {
        p *= 1.0 - others[i];
      }
    }
    pmf[requested] += p;
  }
  return {pmf};
}

LoadPmf asymptotic_load_pmf(int backhaul_count) {
  if (backhaul_count < 1) {
    throw std::domain_error("asymptotic_load_pmf: backhaul count must be >= 1");
  }
  std::vector<double> pmf(backhaul_count, 0.0);
  pmf.back() = 1.0;
  return {pmf};
}

double admission_weight(const LoadPmf& pmf, int backhaul_capability) {
  double weight = 0.0;
  for (int k = 1; k <= pmf.size(); ++k) {
    weight += pmf.prob(k) * backhaul_capability /
              static_cast<double>(std::max(k, backhaul_capability));
  }
  return weight;
}

}  // namespace cachenet::load
