#pragma once

#include <functional>
#include <vector>

namespace koenigs::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are cached per n.
const Rule& gauss_legendre(int n);

/// Gauss-Legendre on [a, b] after the sigmoidal change of variables
/// x = a + (b - a) u^k / (u^k + (1-u)^k). With k > 1 the transform flattens
/// integrable algebraic endpoint singularities; k = 1 is plain Gauss-Legendre.
double integrate(const std::function<double(double)>& fn, double a, double b, int n, int grade = 1);

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // |I_n - I_{n/2}| at the final doubling
  int nodes = 0;
};

/// Doubles the node count from n_start until successive results agree to
/// rel_tol (relative to max(|I|, abs_floor)) or n_max is reached.
Estimate integrate_doubling(const std::function<double(double)>& fn, double a, double b,
                            double rel_tol, int grade = 3, int n_start = 32, int n_max = 4096,
                            double abs_floor = 0.0);

}  // namespace koenigs::quadrature
