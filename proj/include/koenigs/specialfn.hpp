#pragma once

// Orthogonal polynomials and the normalized one-dimensional eigenfunctions
// that every bound state is assembled from. All functions are pure.

#include "koenigs/units.hpp"

namespace koenigs {

struct PolyParams {
  int degree = 0;
  double alpha = 0.0;  // Jacobi upper index alpha, or Laguerre order
  double beta = 0.0;   // Jacobi upper index beta (unused for Laguerre)
};

namespace specialfn {

inline constexpr int kMaxDegree = 500;

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) by forward three-term recurrence.
double jacobi_poly(const PolyParams& p, double x);

/// Generalized Laguerre polynomial L_n^{(lambda)}(x), lambda = p.alpha, x >= 0.
double gen_laguerre(const PolyParams& p, double x);

/// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

/// Normalized Poschl-Teller eigenfunction on (0, pi/2):
///   Phi_n^{(a,b)}(x) = C (sin x)^{a+1/2} (cos x)^{b+1/2} P_n^{(a,b)}(cos 2x).
/// The sine exponent carries `alpha`, the cosine exponent carries `beta`.
double poschl_teller_wf(int n, double alpha, double beta, double x);

/// Normalized radial oscillator eigenfunction on (0, inf), measure dr:
///   [-hbar^2/2m d^2/dr^2 + m omega^2 r^2/2 + hbar^2 (lambda^2 - 1/4)/(2 m r^2)] Psi
///     = hbar omega (2n + lambda + 1) Psi.
double radial_ho_wf(int n, double lambda, double omega, double r, const UnitScalars& units);

/// Normalized one-dimensional oscillator eigenfunction on the full line,
/// eigenvalue hbar omega (n + 1/2).
double harmonic_oscillator_wf(int n, double omega, double x, const UnitScalars& units);

/// Reduced Coulomb radial eigenfunction u(r) = r R(r) on (0, inf), measure dr:
///   [-hbar^2/2m d^2/dr^2 - alpha/r + hbar^2 (lambda^2 - 1/4)/(2 m r^2)] u = E u,
///   E = -m alpha^2 / (2 hbar^2 (n + lambda + 1/2)^2).
/// `bohr` is the length scale a = hbar^2/(m alpha).
double coulomb_radial_wf(int n, double lambda, double bohr, double r);

/// Ferrers function P_{mu+l}^{-mu}(x) for |x| < 1, mu > -1/2, via the
/// Gegenbauer reduction to P_l^{(mu,mu)}.
double assoc_legendre_neg_order(int l, double mu, double x);

/// Same function scaled to unit norm on (-1, 1) with measure dx.
double assoc_legendre_neg_order_normalized(int l, double mu, double x);

}  // namespace specialfn
}  // namespace koenigs
