#include "koenigs/specialfn.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "koenigs/errors.hpp"

namespace koenigs::specialfn {
namespace {

void check_degree(int n, const char* who) {
  if (n < 0 || n > kMaxDegree) {
    throw ParameterError(std::string(who) + ": degree " + std::to_string(n) +
                         " outside [0, " + std::to_string(kMaxDegree) + "]");
  }
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  // glibc lgamma is accurate to a few ulp on the positive axis.
  return std::lgamma(x);
}

double jacobi_poly(const PolyParams& p, double x) {
  check_degree(p.degree, "jacobi_poly");
  const double a = p.alpha;
  const double b = p.beta;
  if (p.degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int n = 2; n <= p.degree; ++n) {
    const double s = 2.0 * n + a + b;
    const double a1 = 2.0 * n * (n + a + b) * (s - 2.0);
    if (a1 == 0.0) {
      throw ParameterError("jacobi_poly: recurrence breaks down for alpha + beta = " +
                           std::to_string(a + b));
    }
    const double a2 = (s - 1.0) * (a * a - b * b);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    const double next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gen_laguerre(const PolyParams& p, double x) {
  check_degree(p.degree, "gen_laguerre");
  if (x < 0.0) throw DomainError("gen_laguerre: x must be non-negative");
  const double lam = p.alpha;
  if (p.degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + lam - x;
  for (int n = 1; n < p.degree; ++n) {
    const double next = ((2.0 * n + 1.0 + lam - x) * cur - (n + lam) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  check_degree(n, "hermite");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double poschl_teller_wf(int n, double alpha, double beta, double x) {
  check_degree(n, "poschl_teller_wf");
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ParameterError("poschl_teller_wf: alpha and beta must exceed -1");
  }
  if (!(x > 0.0) || !(x < std::numbers::pi / 2)) {
    throw DomainError("poschl_teller_wf: x must lie in (0, pi/2)");
  }
  // (a+b+2n+1) Gamma(a+b+n+1) collapses to Gamma(a+b+2) at n = 0, which keeps
  // the log-space prefactor valid when a+b+1 <= 0.
  double log_norm;
  if (n == 0) {
    log_norm = std::log(2.0) + log_gamma(alpha + beta + 2.0) - log_gamma(alpha + 1.0) -
               log_gamma(beta + 1.0);
  } else {
    log_norm = std::log(2.0 * (alpha + beta + 2.0 * n + 1.0)) + log_factorial(n) +
               log_gamma(alpha + beta + n + 1.0) - log_gamma(alpha + n + 1.0) -
               log_gamma(beta + n + 1.0);
  }
  const double log_env = 0.5 * log_norm + (alpha + 0.5) * std::log(std::sin(x)) +
                         (beta + 0.5) * std::log(std::cos(x));
  return std::exp(log_env) * jacobi_poly({n, alpha, beta}, std::cos(2.0 * x));
}

double radial_ho_wf(int n, double lambda, double omega, double r, const UnitScalars& units) {
  check_degree(n, "radial_ho_wf");
  if (!(lambda > -1.0)) throw ParameterError("radial_ho_wf: lambda must exceed -1");
  if (!(omega > 0.0)) throw ParameterError("radial_ho_wf: omega must be positive");
  if (!(r > 0.0)) throw DomainError("radial_ho_wf: r must be positive");
  const double a = units.mass * omega / units.hbar;
  const double xi = a * r * r;
  const double log_env = 0.5 * (std::log(2.0 * a) + log_factorial(n) - log_gamma(n + lambda + 1.0)) +
                         0.5 * lambda * std::log(a) + (lambda + 0.5) * std::log(r) - 0.5 * xi;
  return std::exp(log_env) * gen_laguerre({n, lambda, 0.0}, xi);
}

double harmonic_oscillator_wf(int n, double omega, double x, const UnitScalars& units) {
  check_degree(n, "harmonic_oscillator_wf");
  if (!(omega > 0.0)) throw ParameterError("harmonic_oscillator_wf: omega must be positive");
  const double a = units.mass * omega / units.hbar;
  const double xi = std::sqrt(a) * x;
  const double log_env = -0.5 * (n * std::log(2.0) + log_factorial(n)) +
                         0.25 * std::log(a / std::numbers::pi) - 0.5 * xi * xi;
  return std::exp(log_env) * hermite(n, xi);
}

double coulomb_radial_wf(int n, double lambda, double bohr, double r) {
  check_degree(n, "coulomb_radial_wf");
  if (!(lambda > -0.5)) throw ParameterError("coulomb_radial_wf: lambda must exceed -1/2");
  if (!(bohr > 0.0)) throw ParameterError("coulomb_radial_wf: length scale must be positive");
  if (!(r > 0.0)) throw DomainError("coulomb_radial_wf: r must be positive");
  const double nu = n + lambda + 0.5;
  const double rho = 2.0 * r / (bohr * nu);
  const double log_env =
      0.5 * (log_factorial(n) - std::log(bohr) - 2.0 * std::log(nu) - log_gamma(n + 2.0 * lambda + 1.0)) +
      (lambda + 0.5) * std::log(rho) - 0.5 * rho;
  return std::exp(log_env) * gen_laguerre({n, 2.0 * lambda, 0.0}, rho);
}

double assoc_legendre_neg_order(int l, double mu, double x) {
  check_degree(l, "assoc_legendre_neg_order");
  if (!(mu > -0.5)) throw ParameterError("assoc_legendre_neg_order: mu must exceed -1/2");
  if (!(std::abs(x) < 1.0)) throw DomainError("assoc_legendre_neg_order: |x| must be < 1");
  // P_{mu+l}^{-mu}(x) = (1-x^2)^{mu/2} 2^{-mu} l!/Gamma(l+mu+1) P_l^{(mu,mu)}(x)
  const double log_pref = 0.5 * mu * std::log1p(-x * x) - mu * std::log(2.0) + log_factorial(l) -
                          log_gamma(l + mu + 1.0);
  return std::exp(log_pref) * jacobi_poly({l, mu, mu}, x);
}

double assoc_legendre_neg_order_normalized(int l, double mu, double x) {
  const double log_norm =
      0.5 * (std::log(l + mu + 0.5) + log_gamma(l + 2.0 * mu + 1.0) - log_factorial(l));
  return std::exp(log_norm) * assoc_legendre_neg_order(l, mu, x);
}

}  // namespace koenigs::specialfn
