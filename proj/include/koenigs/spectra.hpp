#pragma once

#include <array>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "koenigs/spaces.hpp"

namespace koenigs {

// Label schemes. The cylindrical scheme (n_rho, n_z, n_phi) is used for the
// circular-polar chart of KI and KII.
enum class QnScheme { polar, cartesian, coulomb, cylindrical };

std::string_view to_string(QnScheme scheme);
QnScheme parse_qn_scheme(std::string_view text);

/// Integer labels plus the sign chosen for each k-tilde square root.
///   polar:       (n_r, n_theta, n_phi)
///   cartesian:   (n_x, n_y, n_z)
///   coulomb:     (n_r, l, n_phi)
///   cylindrical: (n_rho, n_z, n_phi)
struct QuantumNumbers {
  QnScheme scheme = QnScheme::polar;
  std::array<int, 3> labels{};
  std::array<int, 3> branch_signs{1, 1, 1};

  bool operator==(const QuantumNumbers&) const = default;
};

/// Aggregate N per space convention:
///   KI   n_1 + n_2 + n_3 (any scheme)
///   KII  2(n_x + n_y) + n_z, or 2(n_rho + n_phi) + n_z for cylindrical labels
///   KIII 2 + 2 n_phi + l + n_r
/// Throws ParameterError for negative labels or a scheme the kind does not use.
int aggregate_n(SpaceKind kind, const QuantumNumbers& qn);

/// Representative labels for aggregate N in the default scheme of `kind`.
QuantumNumbers labels_for_n(SpaceKind kind, int n);

/// An index that is the square root of a quantity linear in E. When the
/// radicand is negative, `real` is false and `value` holds the magnitude of
/// the imaginary part.
struct FlaggedIndex {
  double value = 0.0;
  bool real = true;
};

struct EffectiveIndices {
  SpaceKind kind = SpaceKind::KI;
  FlaggedIndex omega_eff;            // KI, KII
  std::array<FlaggedIndex, 3> k_eff;  // (x,y,z) for KI/KII, (1,2,3) otherwise
  int k_count = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double alpha_eff = 0.0;  // KIII: alpha2 - alpha1 E
  FlaggedIndex kappa;      // KIII: alpha_eff sqrt(-m/(2 delta E))/hbar
  std::array<int, 3> branch_signs{1, 1, 1};

  bool all_real() const;
};

/// Energy-dependent indices at E. Imaginary radicands are flagged, never thrown.
EffectiveIndices effective_indices(const SpaceSpec& spec, const QuantumNumbers& qn, double energy);

struct ValidityWindow {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::vector<std::string> constraints;

  bool contains(double energy) const { return energy > lower && energy < upper; }
};

/// Open E-intervals on which every index in the quantization condition is
/// real. All radicands are linear in E, so the result has at most one entry.
/// Throws KindError for KIV/KV.
std::vector<ValidityWindow> validity_windows(const SpaceSpec& spec, const QuantumNumbers& qn);

/// Unsquared quantization residual:
///   KI   delta E - hbar w (2N + kx + ky + kz + 3)
///   KII  delta E - hbar w (N + kx + ky + 5/2)
///   KIII N + k1 + k2 - kappa
/// with tilde quantities and branch signs from qn. Throws OutOfWindowError
/// when a needed index is imaginary and KindError for KIV/KV.
double quantization_residual(const SpaceSpec& spec, const QuantumNumbers& qn, double energy);

enum class Provenance { root_solver, closed_form, oracle };
std::string_view to_string(Provenance p);

struct EnergyLevel {
  double energy = 0.0;
  double residual = 0.0;
  QuantumNumbers qn;
  int n_aggregate = 0;
  int window_id = 0;
  Provenance provenance = Provenance::root_solver;
};

struct SolverConfig {
  double scan_points_per_decade = 1e4;
  double tol_rel = 1e-13;
  double e_max_abs = 1e6;
  double dedupe_rel = 1e-9;
  // 0 keeps the sign carried by the quantum numbers; +1/-1 overrides it.
  std::array<int, 3> branch_signs{0, 0, 0};

  bool operator==(const SolverConfig&) const = default;
};

/// Throws ConfigError unless every numeric field is positive and finite.
void validate(const SolverConfig& cfg);

/// Applies the config's branch overrides to qn.
QuantumNumbers with_branch_overrides(QuantumNumbers qn, const SolverConfig& cfg);

struct SolveResult {
  std::vector<EnergyLevel> levels;
  std::vector<std::string> diagnostics;
};

/// All sign changes of the residual inside the validity windows, refined by
/// bisection, deduplicated and sorted by energy. An empty list is a valid
/// outcome and comes with a diagnostic.
SolveResult solve_levels(const SpaceSpec& spec, const QuantumNumbers& qn, const SolverConfig& cfg = {});

/// Closed-form special cases, identified by:
///   "KI.1"   omega = k = 0
///   "KI.2-", "KI.2+"  alpha = k = 0 (both branches of the quadratic)
///   "KI.3"   alpha = beta = k = 0, delta > 0
///   "KI.4"   alpha = beta = 0, delta > 0
///   "KI0"    omega = k = 0, alpha != 0
///   "KII.flat"  alpha = beta = 0
///   "KII0"   omega = k = 0, alpha != 0
///   "KIII.1" alpha1 = beta = gamma = 0
///   "KIII.2" alpha2 = k1 = k2 = 0
///   "KIII.3-", "KIII.3+"  k1 = k2 = 0
/// Every returned energy satisfies the unsquared residual; a branch that does
/// not raises BranchError. Pattern violations raise PatternMismatchError.
EnergyLevel closed_form_special(const SpaceSpec& spec, std::string_view case_id, const QuantumNumbers& qn);

/// The case ids accepted by closed_form_special for a given kind.
std::vector<std::string> special_case_ids(SpaceKind kind);

enum class SpectrumType { discrete_candidates, continuous_only };
std::string_view to_string(SpectrumType t);

SpectrumType spectrum_type(const SpaceSpec& spec);

}  // namespace koenigs
