#pragma once

// Independent re-derivation of bound-state energies. Eigenvalues of the
// transformed one-dimensional problems come from a finite-difference
// discretisation, and the energy is fixed by delta E = eps(E) with the
// effective indices recomputed at every trial E. Nothing here evaluates the
// quantization residual or the closed forms.

#include <string>
#include <vector>

#include "koenigs/spectra.hpp"

namespace koenigs::oracle {

/// Uniform grid with Dirichlet conditions at both ends. The n_points unknowns
/// sit strictly inside (r_min, r_max).
struct FdGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int n_points = 4000;
};

enum class PotentialKind {
  oscillator,       // m w^2 r^2/2 + hbar^2 (lambda^2 - 1/4)/(2 m r^2) on r > 0
  coulomb,          // -alpha/r + hbar^2 (lambda^2 - 1/4)/(2 m r^2) on r > 0
  line_oscillator,  // m w^2 z^2/2 on the whole line; the grid spans (r_min, r_max) symmetric about 0
};

struct RadialPotential {
  PotentialKind kind = PotentialKind::oscillator;
  double lambda = 0.5;
  double omega_eff = 1.0;
  double alpha_eff = 1.0;
};

/// Throws ParameterError if the grid violates the FdGrid invariants
/// (n_points >= 200, r_min > 0 for half-line problems, r_max > r_min).
void validate(const FdGrid& grid, PotentialKind kind);

/// The k_lowest smallest eigenvalues of -(hbar^2/2m) d^2/dr^2 + U(r),
/// ascending, by Sturm-sequence bisection on the tridiagonal matrix.
std::vector<double> fd_radial_eigen(const RadialPotential& pot, const FdGrid& grid, int k_lowest,
                                    const UnitScalars& units);

/// Grid for eigenvalue index n: r_min = L * clamp(1e-10^{1/(2 lambda)}, 1e-12, 1e-4),
/// r_max = 2 r_turn, then r_max is enlarged until the eigenvector tail at r_max
/// is below 1e-8 of its peak.
FdGrid auto_grid(const RadialPotential& pot, int n, int n_points, const UnitScalars& units);

/// Largest |psi| over the outer 5% of the grid (both ends for the line
/// oscillator) relative to the peak, for the n-th eigenvector.
double tail_ratio(const RadialPotential& pot, const FdGrid& grid, int n, const UnitScalars& units);

struct OracleConfig {
  int n_points = 4000;
  int coarse_points = 400;
  double coarse_per_decade = 10.0;
  double tol_rel = 1e-11;
  double e_max_abs = 1e6;
};

struct OracleResult {
  bool found = false;
  std::vector<EnergyLevel> levels;  // provenance oracle, sorted by energy
  std::vector<FdGrid> grids;        // grid of the principal problem at each level
  std::string message;
};

/// Roots of F(E) = delta E - eps(E), where eps is the sum of finite-difference
/// eigenvalues of the separated problems selected by the labels. A missing
/// bracket is reported through found = false, not thrown.
OracleResult self_consistent_level(const SpaceSpec& spec, const QuantumNumbers& qn, const OracleConfig& cfg = {});

struct MatchedPair {
  std::size_t index_a = 0;
  std::size_t index_b = 0;
  double energy_a = 0.0;
  double energy_b = 0.0;
  double deviation = 0.0;  // |E_a - E_b| / max(|E_a|, |E_b|)
};

struct CompareReport {
  std::vector<MatchedPair> matched;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;
  double max_deviation = 0.0;

  bool all_matched() const { return unmatched_a.empty() && unmatched_b.empty(); }
};

/// Nearest-energy matching of two sorted lists within a relative tolerance.
CompareReport compare(const std::vector<EnergyLevel>& a, const std::vector<EnergyLevel>& b, double rel_tol);

}  // namespace koenigs::oracle
