#pragma once

namespace cachenet::specfun {

// Gauss hypergeometric 2F1(a, b; c; x) for x <= 0. The argument is mapped
// into [0, 1) with the Pfaff transformation
//   2F1(a, b; c; x) = (1-x)^{-a} 2F1(a, c-b; c; x/(x-1))
// and the power series is summed to machine precision (absolute error
// below 1e-12 for the magnitudes used here).
double gauss_2f1(double a, double b, double c, double x);

// Beta function B(a, b) for a, b > 0, via log-gamma.
double beta_fn(double a, double b);

// (N!)^{-1/N}, the shape constant of the gamma-tail lower bound used by
// the STP upper bound. Stable at least up to N = 256.
double alpha_const(int n_antennas);

struct ZetaCoeffs {
  double zeta1;  // coefficient of t in the single-antenna STP denominator
  double zeta2;  // constant term, (2*pi/beta) csc(2*pi/beta) tau^{2/beta}
};

// Single-antenna STP denominator coefficients; requires tau > 0, beta > 2.
// Satisfies zeta1 + zeta2 = 1 + (2 tau/(beta-2)) 2F1(1, 1-2/b; 2-2/b; -tau).
ZetaCoeffs zeta_coeffs(double tau, double beta);

struct ThetaCoeffs {
  double theta_a;
  double theta_c;
};

// Multi-antenna bound coefficients: zeta_coeffs evaluated at the scaled
// threshold i * alpha_const(N) * tau, for 1 <= i <= N.
ThetaCoeffs theta_coeffs(int i, double tau, double beta, int n_antennas);

enum class FileKind { cached, backhaul };

// Toeplitz coefficient l_i of the STP expression. For kind == cached the
// value is affine in t_f: (1-t_f) * full-plane term + t_f * tail term;
// for kind == backhaul t_f is ignored. Requires beta > 2, i >= 0,
// t_f in [0, 1].
double ell_coeff(int i, double t_f, double tau, double beta, FileKind kind);

}  // namespace cachenet::specfun
