#ifndef NEUMANN_CONSTANTS_HPP
#define NEUMANN_CONSTANTS_HPP

#include "neumann/potential.hpp"

namespace neumann {

/// cot(x) = cos(x)/sin(x); throws DomainError within `pole_guard` of a pole.
double cot(double x, double pole_guard = 1e-8);

/// Neumann eigenvalue n^2 pi^2 / L^2.
double lambda_n(int n, double L);

/// n-th eigenvalue of u'' + mu u = 0, u'(0) = u(L) = 0, counted from n = 1:
/// (2n - 1)^2 pi^2 / (4 L^2).
double mu_n(int n, double L);

/// L^1 Lyapunov constant at the n-th eigenvalue,
/// (2 pi n (n + 1) / L) cot(pi n / (2 (n + 1))).
/// Real n is accepted so the n -> 0+ limit 4/L can be probed.
double beta1(double n, double L);

/// L^infinity Lyapunov constant at the n-th eigenvalue, equal to lambda_{n+1}.
double beta_inf(int n, double L);

/// Minimum of (int u'^2 - M int u^2) / u(b)^2 over u(a) = 0:
/// sqrt(M) cot(sqrt(M) |I|). Requires 0 < M <= pi^2 / (4 |I|^2).
double j_min(double M, const Interval& I);

/// Minimizer sin(sqrt(M)(x - a)) / sin(sqrt(M) |I|), normalized to 1 at I.hi.
double j_minimizer(double M, const Interval& I, double x);

/// Minimum of sum cot(z_i) over z in (0, pi/2]^r with sum z_i = S: r cot(S / r).
double f_min(int r, double S);

/// Corrected bound A + 2 (k + 1) sqrt(A) cot(sqrt(A) / (2 (k + 1))) for
/// potentials in [A, B] with lambda_k < A (unit interval).
double yong_bound(double A, int k);

}  // namespace neumann

#endif  // NEUMANN_CONSTANTS_HPP
