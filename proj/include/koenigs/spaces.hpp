#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "koenigs/units.hpp"

namespace koenigs {

enum class SpaceKind { KI, KII, KIII, KIV, KV };

std::string_view to_string(SpaceKind kind);
SpaceKind parse_space_kind(std::string_view text);

// One Koenigs space: ds^2 = f(x,y,z) (dx^2 + dy^2 + dz^2) together with the
// flat-space superintegrable potential that was divided by f. Only the
// constants belonging to `kind` are meaningful; the rest must stay zero.
//
//   KI   f = alpha (x^2+y^2+z^2) + beta_x/x^2 + beta_y/y^2 + beta_z/z^2 + delta
//        potential: omega, k_x, k_y, k_z
//   KII  f = alpha (x^2+y^2+4z^2) + beta_x/x^2 + beta_y/y^2 + delta
//        potential: omega, k_x, k_y
//   KIII f = -alpha1/r + beta/x^2 + gamma/y^2 + delta
//        potential: alpha2, k1, k2
//   KIV  f = hbar^2/2m (alpha x/(y^2 sqrt(x^2+y^2)) + beta/y^2 + gamma/z^2) + delta
//        potential: k1, k2, k3
//   KV   f = hbar^2/2m (alpha x/(y^2 sqrt(x^2+y^2)) + beta/y^2) + gamma z + delta
//        potential: k1, k2, k3
//
// For KIV and KV the hbar^2/2m prefactor is part of f, so f carries the same
// units for every kind.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::KI;
  // metric
  double alpha = 0.0;
  double alpha1 = 0.0;
  double beta = 0.0;
  double beta_x = 0.0;
  double beta_y = 0.0;
  double beta_z = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  // potential
  double omega = 0.0;
  double alpha2 = 0.0;
  double k_x = 0.0;
  double k_y = 0.0;
  double k_z = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  UnitScalars units{};

  bool operator==(const SpaceSpec&) const = default;
};

struct SpaceField {
  std::string_view name;
  double SpaceSpec::*member;
};

/// Metric and potential constants that belong to `kind`, in canonical order.
std::span<const SpaceField> metric_fields(SpaceKind kind);
std::span<const SpaceField> potential_fields(SpaceKind kind);

/// True iff every metric constant except delta vanishes.
bool is_flat_limit(const SpaceSpec& spec);

/// Throws ParameterError if a constant that does not belong to spec.kind is
/// non-zero, a constant is not finite, or the units are not positive.
void validate(const SpaceSpec& spec);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

enum class Axis { x = 0, y = 1, z = 2 };

// |coordinate| below this is treated as lying on a singular axis.
inline constexpr double kSingularTol = 1e-12;

/// f and its analytic first and diagonal second partials.
struct MetricJet {
  double f = 0.0;
  std::array<double, 3> grad{};
  std::array<double, 3> hess_diag{};
};

/// Value of f at p. Throws SingularPointError on a singular axis and
/// NonPositiveMetricError when f <= 0.
double metric_factor(const SpaceSpec& spec, const Point3& p);

MetricJet metric_jet(const SpaceSpec& spec, const Point3& p);

/// h_a with f = h_a^2 / x_a^2, i.e. h_a = sqrt(f) |x_a|.
double h_decomposition(const SpaceSpec& spec, const Point3& p, Axis axis);

enum class DerivMode { analytic, numeric };

/// Quantum potential of the product-lattice path integral for the diagonal
/// metric g_ab = f delta_ab:
///   dV = hbar^2 (D-2)/(8m) sum_a ((D-4) s_a^2 + 2 s s_aa) / s^4,  s = sqrt(f).
/// The numeric mode differentiates f with central differences in extended
/// precision and is kept as an independent check of the analytic partials.
double delta_v_total(const SpaceSpec& spec, const Point3& p, DerivMode mode, int dimension = 3);

struct DeltaVSplit {
  double dv1 = 0.0;  // subtracted through the effective Lagrangian
  double dv2 = 0.0;  // 3 hbar^2/8m (1/h_x^2 + 1/h_y^2 + 1/h_z^2)
};

/// Per-axis split of delta_v_total via the h-decomposition. The 1/h_z^2 term
/// is included uniformly for every kind; for KII and KIII it is the piece the
/// effective Lagrangian cancels. Requires all three coordinates non-zero.
DeltaVSplit delta_v_split(const SpaceSpec& spec, const Point3& p);

/// Gamma_i = d_i ln sqrt(g) = (3/2) d_i f / f.
std::array<double, 3> grad_log_sqrt_g(const SpaceSpec& spec, const Point3& p);

}  // namespace koenigs
