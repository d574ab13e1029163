#pragma once

#include <map>
#include <span>
#include <vector>

#include "cachenet/content.hpp"

namespace cachenet::analytic {

// Physical-layer constants. Densities are per square meter; the analysis
// is interference-limited (SIR), so tx_power_w / noise_power_w are used
// only by the Monte Carlo SINR mode.
struct NetworkParams {
  double lambda_b = 1e-4;
  double lambda_u = 1e-3;
  double beta = 4.0;
  int antennas = 1;
  double tau = 1.0;          // SIR threshold, linear
  double tx_power_w = 6.3;
  double noise_power_w = 1.77827941e-13;  // -97.5 dBm

  void check() const;
};

// m^-2 -> km^-2 for the ASE output unit (bit/s/Hz/km^2).
constexpr double kPerKm2 = 1e6;

double ase_from_stp(double stp, const NetworkParams& net);

// STP terms per expression family.
struct StpBreakdown {
  std::map<int, double> per_cached_file;   // f -> P_s^{f,c}(t_f)
  double backhaul_term = 0.0;              // P_s^b
  std::map<int, double> backhaul_weights;  // f -> sum_k pmf(k) B / max(k, B)
  double total_stp = 0.0;
  double ase = 0.0;
};

// l1-induced norm of [I - scale D]^{-1}, where D is the strictly lower
// triangular NxN Toeplitz matrix generated by ell = (l_1 .. l_{N-1}).
// The first column x of the inverse follows the forward recurrence
// x_0 = 1, x_n = scale * sum_{k=1}^{n} l_k x_{n-k}; for the nonnegative
// matrices produced here the norm equals the first-column sum, with an
// explicit per-column fallback if any entry comes out negative.
double toeplitz_inv_l1norm(std::span<const double> ell, double scale);

// Exact STP of a cached file with caching probability t_f.
double stp_cached_exact(double t_f, const NetworkParams& net);

// Exact STP of a backhaul file (identical for every backhaul file).
double stp_backhaul_exact(const NetworkParams& net);

// Exact total STP/ASE: popularity-weighted cached terms plus
// load-pmf-weighted backhaul terms.
StpBreakdown stp_total(const content::FileAllocation& alloc,
                       const content::CachePlacement& placement,
                       const NetworkParams& net, const content::ContentParams& cp);

// Single-antenna closed form; requires net.antennas == 1.
StpBreakdown stp_single_antenna(const content::FileAllocation& alloc,
                                const content::CachePlacement& placement,
                                const NetworkParams& net,
                                const content::ContentParams& cp);

// Gamma-approximation upper bounds.
double stp_cached_upper(double t_f, const NetworkParams& net);
double stp_backhaul_upper(const NetworkParams& net);
StpBreakdown stp_total_upper(const content::FileAllocation& alloc,
                             const content::CachePlacement& placement,
                             const NetworkParams& net,
                             const content::ContentParams& cp);

// High-user-density ASE upper bound: backhaul weight collapses to
// B / max(F_b, B).
double ase_upper_asymptotic(const content::FileAllocation& alloc,
                            const content::CachePlacement& placement,
                            const NetworkParams& net,
                            const content::ContentParams& cp);

// Coefficients of the fractional sandwich around the cached-file STP:
//   t / (mu_lo t + nu_lo) <= P_s^{f,c}(t) <= t / (mu_hi t + nu_hi).
// nu_lo, nu_hi are positive and mu_lo, mu_hi are at most 1.
struct CachedStpBounds {
  double mu_lo = 0.0;
  double nu_lo = 0.0;
  double mu_hi = 0.0;
  double nu_hi = 0.0;
};

CachedStpBounds cached_stp_bound_coeffs(const NetworkParams& net);

}  // namespace cachenet::analytic
