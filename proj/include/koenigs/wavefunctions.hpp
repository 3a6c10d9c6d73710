#pragma once

#include <string_view>

#include "koenigs/spectra.hpp"

namespace koenigs {

enum class Chart { cartesian, spherical, circular_polar };

std::string_view to_string(Chart chart);
Chart parse_chart(std::string_view text);

/// Chart whose separation matches a label scheme:
/// cartesian -> cartesian, polar/coulomb -> spherical, cylindrical -> circular_polar.
Chart default_chart(QnScheme scheme);

// Bound states live on the sector cut out by the singular planes: x, y > 0
// for every kind, and z > 0 for KI. Points in other sectors are evaluated by
// reflection |x|, |y| (and |z| for KI).
struct BoundState {
  SpaceSpec spec;
  EnergyLevel level;
  Chart chart = Chart::spherical;
  EffectiveIndices indices;  // frozen at level.energy
  double norm_const = 1.0;   // N_N; 1 until normalize() has run
  double norm_error = 0.0;   // relative error estimate of the last normalize()
  double coulomb_scale = 0.0;  // a = hbar^2/(m alpha_eff), KIII only
};

/// Freezes the indices at the level's energy. Throws KindError when the chart
/// does not separate the kind or does not match the label scheme, and
/// ParameterError when an index leaves the range where the component
/// functions exist.
BoundState assemble(const SpaceSpec& spec, const EnergyLevel& level, Chart chart);

/// Flat-space factor phi (Jacobians included, so that int phi^2 d^3x = 1 over
/// the sector).
double evaluate_flat(const BoundState& state, const Point3& p);

/// Psi = N_N f^{-1/4} phi.
double evaluate(const BoundState& state, const Point3& p);

/// Principal one-dimensional factor (radial function for spherical charts,
/// rho factor for circular-polar, z factor for Cartesian) at coordinate s > 0.
double principal_factor(const BoundState& state, double s);

/// Length scale of the principal factor: sqrt(hbar/(m w)) for oscillators,
/// a (n_r + lambda2 + 1/2) for the Coulomb factor.
double length_scale(const BoundState& state);

struct QuadConfig {
  double rel_tol = 1e-12;
  int n_start = 32;
  int n_max = 4096;
};

struct NormReport {
  double norm_const = 0.0;
  double weighted_norm = 0.0;  // int phi^2 f d^3x
  double error_estimate = 0.0;  // relative
  int max_nodes = 0;
};

/// Computes N_N = (int phi^2 f d^3x)^{-1/2} as a sum, over the separable
/// terms of f, of products of one-dimensional quadratures, and stores it in
/// the state. Throws AccuracyError when the estimate exceeds 1e-6 and
/// DomainError when an inverse-square term of f makes the integral diverge.
NormReport normalize(BoundState& state, const QuadConfig& cfg = {});

struct RadialGrid {
  double r_min = 0.0;
  double r_max = 0.0;
  int n_points = 0;
};

/// Grid covering the bulk of the principal factor.
RadialGrid default_residual_grid(const BoundState& state);

/// Relative L2 residual of the principal factor's one-dimensional equation
///   [-(hbar^2/2m) d^2/ds^2 + U_eff(s; E)] u = eps u
/// with indices frozen at the level energy. For spherical charts eps = delta E;
/// otherwise eps = delta E minus the eigenvalues of the other two factors.
/// Throws ConfigError when the grid step exceeds 1e-2 of the length scale.
double ode_residual(const BoundState& state, const RadialGrid& grid);

}  // namespace koenigs
