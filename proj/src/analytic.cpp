#include "cachenet/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "cachenet/errors.hpp"
#include "cachenet/load.hpp"
#include "cachenet/specfun.hpp"

namespace cachenet::analytic {

using specfun::FileKind;

namespace {

std::vector<double> subdiagonal_coeffs(double t_f, const NetworkParams& net, FileKind kind) {
  std::vector<double> ell(static_cast<std::size_t>(net.antennas) - 1);
  for (int i = 1; i < net.antennas; ++i) {
    ell[i - 1] = specfun::ell_coeff(i, t_f, net.tau, net.beta, kind);
  }
  return ell;
}

double stp_toeplitz(double numerator, double denominator, const std::vector<double>& ell,
                    const NetworkParams& net) {
  const double scale = std::pow(net.tau, 2.0 / net.beta) / denominator;
  return numerator / denominator * toeplitz_inv_l1norm(ell, scale);
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Alternating fractional sum of the gamma-approximation bound; t = 1 gives
// the backhaul variant.
double upper_bound_sum(double t_f, const NetworkParams& net) {
  double sum = 0.0;
  for (int i = 1; i <= net.antennas; ++i) {
    const auto [theta_a, theta_c] = specfun::theta_coeffs(i, net.tau, net.beta, net.antennas);
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    sum += sign * binomial(net.antennas, i) * t_f / (theta_a * t_f + theta_c);
  }
  return sum;
}

void require_feasible(const content::FileAllocation& alloc,
                      const content::CachePlacement& placement,
                      const content::ContentParams& cp) {
  const auto violations = content::validate(alloc, placement, cp);
  if (!violations.empty()) {
    throw std::domain_error("infeasible allocation/placement: " + violations.front());
  }
}

// Shared combiner: per-file cached terms + load-weighted backhaul terms.
template <typename CachedStp>
StpBreakdown combine(const content::FileAllocation& alloc,
                     const content::CachePlacement& placement, const NetworkParams& net,
                     const content::ContentParams& cp, CachedStp&& cached_stp,
                     double backhaul_stp, bool asymptotic_weights) {
  StpBreakdown out;
  out.backhaul_term = backhaul_stp;
  double total = 0.0;
  for (std::size_t k = 0; k < alloc.cached.size(); ++k) {
    const int f = alloc.cached[k];
    const double stp_f = cached_stp(placement.t[k]);
    out.per_cached_file[f] = stp_f;
    total += cp.popularity[f - 1] * stp_f;
  }
  for (int f : alloc.backhaul) {
    double weight = 0.0;
    if (cp.backhaul_capability > 0) {
      const load::LoadPmf pmf =
          asymptotic_weights
              ? load::asymptotic_load_pmf(static_cast<int>(alloc.backhaul.size()))
              : load::backhaul_load_pmf(f, alloc.backhaul, cp.popularity, net.lambda_u,
                                        net.lambda_b);
      weight = load::admission_weight(pmf, cp.backhaul_capability);
    }
    out.backhaul_weights[f] = weight;
    total += cp.popularity[f - 1] * weight * backhaul_stp;
  }
  out.total_stp = total;
  out.ase = ase_from_stp(total, net);
  return out;
}

}  // namespace

void NetworkParams::check() const {
  if (!(lambda_b > 0.0) || !(lambda_u > 0.0)) {
    throw std::domain_error("NetworkParams: densities must be positive");
  }
  if (!(beta > 2.0)) {
    throw std::domain_error("NetworkParams: pathloss exponent must exceed 2");
  }
  if (antennas < 1) {
    throw std::domain_error("NetworkParams: antenna count must be >= 1");
  }
  if (!(tau > 0.0)) {
    throw std::domain_error("NetworkParams: SIR threshold must be positive");
  }
  if (!(tx_power_w > 0.0) || !(noise_power_w > 0.0)) {
    throw std::domain_error("NetworkParams: powers must be positive");
  }
}

double ase_from_stp(double stp, const NetworkParams& net) {
  return net.lambda_b * kPerKm2 * stp * std::log2(1.0 + net.tau);
}

double toeplitz_inv_l1norm(std::span<const double> ell, double scale) {
  const std::size_t n = ell.size() + 1;
  std::vector<double> column(n);
  column[0] = 1.0;
  double sum = 1.0;
  bool nonnegative = true;
  for (std::size_t row = 1; row < n; ++row) {
    double v = 0.0;
    for (std::size_t k = 1; k <= row; ++k) {
      v += ell[k - 1] * column[row - k];
    }
    column[row] = scale * v;
    if (column[row] < -1e-12) nonnegative = false;
    sum += column[row];
  }
  if (nonnegative) return sum;
  // Entry signs are mixed; fall back to the explicit induced norm. Column
  // j of the inverse is the first column shifted down by j rows.
  double norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i + j < n; ++i) col += std::abs(column[i]);
    norm = std::max(norm, col);
  }
  return norm;
}

double stp_cached_exact(double t_f, const NetworkParams& net) {
  net.check();
  if (!(t_f >= 0.0 && t_f <= 1.0)) {
    throw std::domain_error("stp_cached_exact: caching probability must lie in [0, 1]");
  }
  if (t_f == 0.0) return 0.0;
  const double l0 = specfun::ell_coeff(0, t_f, net.tau, net.beta, FileKind::cached);
  return stp_toeplitz(t_f, t_f + l0, subdiagonal_coeffs(t_f, net, FileKind::cached), net);
}

double stp_backhaul_exact(const NetworkParams& net) {
  net.check();
  const double l0 = specfun::ell_coeff(0, 1.0, net.tau, net.beta, FileKind::backhaul);
  return stp_toeplitz(1.0, 1.0 + l0, subdiagonal_coeffs(1.0, net, FileKind::backhaul), net);
}

StpBreakdown stp_total(const content::FileAllocation& alloc,
                       const content::CachePlacement& placement, const NetworkParams& net,
                       const content::ContentParams& cp) {
  net.check();
  require_feasible(alloc, placement, cp);
  return combine(alloc, placement, net, cp,
                 [&](double t) { return stp_cached_exact(t, net); },
                 stp_backhaul_exact(net), /*asymptotic_weights=*/false);
}

StpBreakdown stp_single_antenna(const content::FileAllocation& alloc,
                                const content::CachePlacement& placement,
                                const NetworkParams& net,
                                const content::ContentParams& cp) {
  if (net.antennas != 1) {
    throw std::domain_error("stp_single_antenna: requires a single antenna");
  }
  net.check();
  require_feasible(alloc, placement, cp);
  const auto [zeta1, zeta2] = specfun::zeta_coeffs(net.tau, net.beta);
  return combine(alloc, placement, net, cp,
                 [&](double t) { return t / (zeta1 * t + zeta2); },
                 1.0 / (zeta1 + zeta2), /*asymptotic_weights=*/false);
}

double stp_cached_upper(double t_f, const NetworkParams& net) {
  net.check();
  if (!(t_f >= 0.0 && t_f <= 1.0)) {
    throw std::domain_error("stp_cached_upper: caching probability must lie in [0, 1]");
  }
  if (t_f == 0.0) return 0.0;
  return upper_bound_sum(t_f, net);
}

double stp_backhaul_upper(const NetworkParams& net) {
  net.check();
  return upper_bound_sum(1.0, net);
}

StpBreakdown stp_total_upper(const content::FileAllocation& alloc,
                             const content::CachePlacement& placement,
                             const NetworkParams& net,
                             const content::ContentParams& cp) {
  net.check();
  require_feasible(alloc, placement, cp);
  return combine(alloc, placement, net, cp,
                 [&](double t) { return stp_cached_upper(t, net); },
                 stp_backhaul_upper(net), /*asymptotic_weights=*/false);
}

double ase_upper_asymptotic(const content::FileAllocation& alloc,
                            const content::CachePlacement& placement,
                            const NetworkParams& net,
                            const content::ContentParams& cp) {
  net.check();
  require_feasible(alloc, placement, cp);
  return combine(alloc, placement, net, cp,
                 [&](double t) { return stp_cached_upper(t, net); },
                 stp_backhaul_upper(net), /*asymptotic_weights=*/true)
      .ase;
}

CachedStpBounds cached_stp_bound_coeffs(const NetworkParams& net) {
  net.check();
  const auto [zeta1, zeta2] = specfun::zeta_coeffs(net.tau, net.beta);
  const double tau_pow = std::pow(net.tau, 2.0 / net.beta);
  CachedStpBounds out{zeta1, zeta2, zeta1, zeta2};
  // Each subdiagonal coefficient enters through tau^{2/beta} l_i; the
  // full-plane part exceeds the tail part, so every correction is
  // nonnegative.
  for (int i = 1; i < net.antennas; ++i) {
    const double full_plane =
        tau_pow * specfun::ell_coeff(i, 0.0, net.tau, net.beta, FileKind::cached);
    const double tail =
        tau_pow * specfun::ell_coeff(i, 1.0, net.tau, net.beta, FileKind::cached);
    const double fraction = static_cast<double>(net.antennas - i) / net.antennas;
    out.mu_lo += fraction * (full_plane - tail);
    out.nu_lo -= fraction * full_plane;
    out.mu_hi += full_plane - tail;
    out.nu_hi -= full_plane;
  }
  return out;
}

}  // namespace cachenet::analytic
