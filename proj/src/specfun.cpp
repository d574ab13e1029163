#include "cachenet/specfun.hpp"

#include <cmath>
#include <string>

#include "cachenet/errors.hpp"

namespace cachenet::specfun {

namespace {

constexpr long kMaxTerms = 1000000;

double require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw NumericError(std::string(what) + " produced a non-finite value");
  }
  return v;
}

bool is_nonpositive_integer(double c) {
  return c <= 0.0 && c == std::floor(c);
}

// Power series sum_{n>=0} (a)_n (b)_n / (c)_n w^n / n! for |w| < 1.
double gauss_series(double a, double b, double c, double w) {
  double term = 1.0;
  double sum = 1.0;
  for (long n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (1.0 + n)) * w;
    sum += term;
    if (std::abs(term) <= 1e-17 * (1.0 + std::abs(sum))) return sum;
  }
  throw NumericError("gauss_2f1: series did not converge within term cap");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double x) {
  if (is_nonpositive_integer(c)) {
    throw std::domain_error("gauss_2f1: c must not be a non-positive integer");
  }
  if (!(x <= 0.0)) {
    throw std::domain_error("gauss_2f1: argument must satisfy x <= 0");
  }
  if (x == 0.0) return 1.0;
  const double w = x / (x - 1.0);  // in (0, 1)
  const double prefactor = std::pow(1.0 - x, -a);
  return require_finite(prefactor * gauss_series(a, c - b, c, w), "gauss_2f1");
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("beta_fn: arguments must be positive");
  }
  return require_finite(std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)),
                        "beta_fn");
}

double alpha_const(int n_antennas) {
  if (n_antennas < 1) {
    throw std::domain_error("alpha_const: antenna count must be >= 1");
  }
  return std::exp(-std::lgamma(static_cast<double>(n_antennas) + 1.0) / n_antennas);
}

ZetaCoeffs zeta_coeffs(double tau, double beta) {
  if (!(tau > 0.0)) {
    throw std::domain_error("zeta_coeffs: tau must be positive");
  }
  if (!(beta > 2.0)) {
    throw std::domain_error("zeta_coeffs: pathloss exponent must exceed 2");
  }
  const double two_over_beta = 2.0 / beta;
  const double excluded = 2.0 * tau / (beta - 2.0) *
                          gauss_2f1(1.0, 1.0 - two_over_beta, 2.0 - two_over_beta, -tau);
  const double full_plane = (M_PI * two_over_beta) / std::sin(M_PI * two_over_beta) *
                            std::pow(tau, two_over_beta);
  return {require_finite(1.0 + excluded - full_plane, "zeta_coeffs"),
          require_finite(full_plane, "zeta_coeffs")};
}

ThetaCoeffs theta_coeffs(int i, double tau, double beta, int n_antennas) {
  if (i < 1 || i > n_antennas) {
    throw std::domain_error("theta_coeffs: index must satisfy 1 <= i <= N");
  }
  const ZetaCoeffs z = zeta_coeffs(i * alpha_const(n_antennas) * tau, beta);
  return {z.zeta1, z.zeta2};
}

double ell_coeff(int i, double t_f, double tau, double beta, FileKind kind) {
  if (i < 0) {
    throw std::domain_error("ell_coeff: index must be non-negative");
  }
  if (!(tau > 0.0)) {
    throw std::domain_error("ell_coeff: tau must be positive");
  }
  if (!(beta > 2.0)) {
    throw std::domain_error("ell_coeff: pathloss exponent must exceed 2");
  }
  if (kind == FileKind::cached && !(t_f >= 0.0 && t_f <= 1.0)) {
    throw std::domain_error("ell_coeff: caching probability must lie in [0, 1]");
  }
  const double two_over_beta = 2.0 / beta;
  if (i == 0) {
    const double tail = 2.0 * tau / (beta - 2.0) *
                        gauss_2f1(1.0, 1.0 - two_over_beta, 2.0 - two_over_beta, -tau);
    if (kind == FileKind::backhaul) return tail;
    const double full_plane = (M_PI * two_over_beta) / std::sin(M_PI * two_over_beta) *
                              std::pow(tau, two_over_beta);
    return require_finite(t_f * tail + (1.0 - t_f) * full_plane, "ell_coeff");
  }
  const double tail = 2.0 * std::pow(tau, i - two_over_beta) / (i * beta - 2.0) *
                      gauss_2f1(i + 1.0, i - two_over_beta, i + 1.0 - two_over_beta, -tau);
  if (kind == FileKind::backhaul) return require_finite(tail, "ell_coeff");
  const double full_plane = two_over_beta * beta_fn(two_over_beta + 1.0, i - two_over_beta);
  return require_finite((1.0 - t_f) * full_plane + t_f * tail, "ell_coeff");
}

}  // namespace cachenet::specfun
