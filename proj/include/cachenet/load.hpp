#pragma once

#include <vector>

namespace cachenet::load {

// Distribution of the number of distinct backhaul files requested at the
// tagged BS, given that one backhaul file is already requested there.
// probs[k-1] = P(request count = k), k = 1..F_b.
struct LoadPmf {
  std::vector<double> probs;

  double prob(int k) const { return probs.at(static_cast<std::size_t>(k) - 1); }
  int size() const { return static_cast<int>(probs.size()); }
};

// Probability that at least one user of a cell requests file i, under the
// mean-load cell-size model: 1 - (1 + q_i lambda_u / (3.5 lambda_b))^{-4.5}.
double request_prob(double q_i, double lambda_u, double lambda_b);

// pmf of the tagged BS's backhaul request count when requested_file is
// known to be requested. The other files' request indicators are
// independent Bernoullis, so the pmf is Poisson-binomial; evaluated with
// the O(n^2) convolution DP.
LoadPmf backhaul_load_pmf(int requested_file, const std::vector<int>& backhaul_set,
                          const std::vector<double>& popularity, double lambda_u,
                          double lambda_b);

// Literal subset-sum enumeration of the same pmf, kept as a test oracle.
// Guarded to |backhaul_set| <= 20.
LoadPmf backhaul_load_pmf_bruteforce(int requested_file,
                                     const std::vector<int>& backhaul_set,
                                     const std::vector<double>& popularity,
                                     double lambda_u, double lambda_b);

// High-user-density limit: point mass at k = backhaul_count.
LoadPmf asymptotic_load_pmf(int backhaul_count);

// Poisson-binomial pmf over {0..n} for independent Bernoulli success
// probabilities; the shared DP behind backhaul_load_pmf.
std::vector<double> poisson_binomial_pmf(const std::vector<double>& probs);

// Expected backhaul admission weight sum_k pmf(k) * B / max(k, B).
double admission_weight(const LoadPmf& pmf, int backhaul_capability);

}  // namespace cachenet::load
