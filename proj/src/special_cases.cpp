#include <cmath>
#include <initializer_list>
#include <sstream>

#include "koenigs/errors.hpp"
#include "koenigs/spectra.hpp"
#include "spectra_internal.hpp"

namespace koenigs {
namespace {

double field(const SpaceSpec& spec, std::string_view name) {
  for (auto fields : {metric_fields(spec.kind), potential_fields(spec.kind)}) {
    for (const auto& f : fields)
      if (f.name == name) return spec.*f.member;
  }
  return 0.0;
}

void require_kind(const SpaceSpec& spec, SpaceKind kind, std::string_view case_id) {
  if (spec.kind != kind) {
    throw PatternMismatchError("case " + std::string(case_id) + " applies to " + std::string(to_string(kind)) +
                               ", not " + std::string(to_string(spec.kind)));
  }
}

void require_zero(const SpaceSpec& spec, std::string_view case_id, std::initializer_list<std::string_view> names) {
  std::string offending;
  for (auto n : names) {
    if (field(spec, n) != 0.0) offending += (offending.empty() ? "" : ", ") + std::string(n);
  }
  if (!offending.empty()) {
    std::string all;
    for (auto n : names) all += (all.empty() ? "" : ", ") + std::string(n);
    throw PatternMismatchError("case " + std::string(case_id) + " requires " + all + " = 0; non-zero: " + offending);
  }
}

void require_positive_delta(const SpaceSpec& spec, std::string_view case_id) {
  if (!(spec.delta > 0.0)) throw PatternMismatchError("case " + std::string(case_id) + " requires delta > 0");
}

// Sign shared by a set of constants; mixed signs leave a square root of a
// negative number in the closed form.
int common_sign(std::initializer_list<double> values, std::string_view case_id) {
  int sign = 0;
  for (double v : values) {
    if (v == 0.0) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) {
      throw ParameterError("case " + std::string(case_id) + ": the beta constants must share one sign");
    }
    sign = s;
  }
  return sign;
}

// -2 alpha hbar^2 Q^2 / (m (delta + 2 sgn(alpha) sum sqrt(alpha beta_a))^2), the
// solution of delta E = hbar sqrt(-2 alpha E/m) (Q + sum sqrt(-2 m beta_a E)/hbar).
double centrifugal_well(const SpaceSpec& s, double q, std::initializer_list<double> betas, std::string_view case_id) {
  double sum = 0.0;
  for (double b : betas) {
    if (s.alpha * b < 0.0) {
      throw ParameterError("case " + std::string(case_id) + " needs alpha*beta >= 0 for every beta (sqrt(alpha beta) real)");
    }
    sum += std::sqrt(s.alpha * b);
  }
  const double sgn = s.alpha > 0.0 ? 1.0 : -1.0;
  const double den = s.delta + 2.0 * sgn * sum;
  const double hbar = s.units.hbar;
  return -2.0 * s.alpha * hbar * hbar * q * q / (s.units.mass * den * den);
}

void verify_branch(const SpaceSpec& spec, const QuantumNumbers& qn, double e, std::string_view case_id) {
  if (!std::isfinite(e)) {
    throw BranchError("case " + std::string(case_id) + " gives no finite energy for these constants");
  }
  detail::ResidualTerms t;
  try {
    t = detail::residual_terms(spec, qn, e);
  } catch (const OutOfWindowError&) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "case " << case_id << ": E = " << e << " lies outside the validity window (squaring artifact)";
    throw BranchError(msg.str());
  }
  const double scale = std::max({std::abs(t.lhs), std::abs(t.rhs), 1e-300});
  if (std::abs(t.lhs - t.rhs) > 1e-9 * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "case " << case_id << ": E = " << e
        << " does not satisfy the unsquared quantization condition (residual " << t.lhs - t.rhs << ")";
    throw BranchError(msg.str());
  }
}

}  // namespace

std::vector<std::string> special_case_ids(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::KI: return {"KI.1", "KI.2-", "KI.2+", "KI.3", "KI.4", "KI0"};
    case SpaceKind::KII: return {"KII.flat", "KII0"};
    case SpaceKind::KIII: return {"KIII.1", "KIII.2", "KIII.3-", "KIII.3+"};
    default: return {};
  }
}

EnergyLevel closed_form_special(const SpaceSpec& spec, std::string_view id, const QuantumNumbers& qn) {
  validate(spec);
  const int n = aggregate_n(spec.kind, qn);
  const double hbar = spec.units.hbar;
  const double m = spec.units.mass;
  const auto& sg = qn.branch_signs;
  double e = 0.0;

  if (id == "KI.1" || id == "KI0") {
    require_kind(spec, SpaceKind::KI, id);
    require_zero(spec, id, {"omega", "k_x", "k_y", "k_z"});
    if (spec.alpha == 0.0) throw PatternMismatchError("case " + std::string(id) + " requires alpha != 0");
    e = centrifugal_well(spec, 2.0 * n + 3.0, {spec.beta_x, spec.beta_y, spec.beta_z}, id);
  } else if (id == "KI.2-" || id == "KI.2+") {
    require_kind(spec, SpaceKind::KI, id);
    require_zero(spec, id, {"alpha", "k_x", "k_y", "k_z"});
    if (spec.omega <= 0.0 || spec.delta == 0.0) {
      throw PatternMismatchError("case " + std::string(id) + " requires omega > 0 and delta != 0");
    }
    const int bsign = common_sign({spec.beta_x, spec.beta_y, spec.beta_z}, id);
    if (bsign == 0) throw PatternMismatchError("case " + std::string(id) + " requires some beta != 0");
    // The energy has the sign opposite to beta.
    const double sigma = -bsign;
    const double b = std::sqrt(std::abs(spec.beta_x)) + std::sqrt(std::abs(spec.beta_y)) + std::sqrt(std::abs(spec.beta_z));
    const double rad = 1.0 + sigma * 2.0 * spec.delta * hbar * (2.0 * n + 3.0) / (m * spec.omega * b * b);
    if (rad < 0.0) {
      throw BranchError("case " + std::string(id) + ": complex energy (semi-bound state), no real level");
    }
    const double pm = id == "KI.2-" ? -1.0 : 1.0;
    const double root = 1.0 + pm * std::sqrt(rad);
    e = sigma * m * spec.omega * spec.omega * b * b / (2.0 * spec.delta * spec.delta) * root * root;
  } else if (id == "KI.3" || id == "KI.4") {
    require_kind(spec, SpaceKind::KI, id);
    if (id == "KI.3") {
      require_zero(spec, id, {"alpha", "beta_x", "beta_y", "beta_z", "k_x", "k_y", "k_z"});
    } else {
      require_zero(spec, id, {"alpha", "beta_x", "beta_y", "beta_z"});
    }
    require_positive_delta(spec, id);
    const double k = sg[0] * std::abs(spec.k_x) + sg[1] * std::abs(spec.k_y) + sg[2] * std::abs(spec.k_z);
    e = hbar * spec.omega * (2.0 * n + k + 3.0) / spec.delta;
  } else if (id == "KII.flat") {
    require_kind(spec, SpaceKind::KII, id);
    require_zero(spec, id, {"alpha", "beta_x", "beta_y"});
    require_positive_delta(spec, id);
    const double k = sg[0] * std::abs(spec.k_x) + sg[1] * std::abs(spec.k_y);
    e = hbar * spec.omega * (n + k + 2.5) / spec.delta;
  } else if (id == "KII0") {
    require_kind(spec, SpaceKind::KII, id);
    require_zero(spec, id, {"omega", "k_x", "k_y"});
    if (spec.alpha == 0.0) throw PatternMismatchError("case KII0 requires alpha != 0");
    e = centrifugal_well(spec, n + 2.5, {spec.beta_x, spec.beta_y}, id);
  } else if (id == "KIII.1") {
    require_kind(spec, SpaceKind::KIII, id);
    require_zero(spec, id, {"alpha1", "beta", "gamma"});
    require_positive_delta(spec, id);
    const double q = n + sg[0] * std::abs(spec.k1) + sg[1] * std::abs(spec.k2);
    e = -m * spec.alpha2 * spec.alpha2 / (2.0 * spec.delta * hbar * hbar * q * q);
  } else if (id == "KIII.2" || id == "KIII.3-" || id == "KIII.3+") {
    require_kind(spec, SpaceKind::KIII, id);
    if (id == "KIII.2") {
      require_zero(spec, id, {"alpha2", "k1", "k2"});
    } else {
      require_zero(spec, id, {"k1", "k2"});
    }
    require_positive_delta(spec, id);
    if (spec.beta < 0.0 || spec.gamma < 0.0) {
      throw ParameterError("case " + std::string(id) + " needs beta, gamma >= 0 (bound states have E < 0)");
    }
    const double sd = std::sqrt(spec.delta);
    const double beta_t = sg[0] * std::sqrt(spec.beta) + sg[1] * std::sqrt(spec.gamma);
    // With t = sqrt(-2mE)/hbar the condition reads N + beta_hat t - c/t = 0.
    const double beta_hat = beta_t - spec.alpha1 / (2.0 * sd);
    if (id == "KIII.2") {
      if (beta_hat == 0.0) throw BranchError("case KIII.2: alpha1/(2 sqrt(delta)) equals beta-tilde, no level");
      e = -hbar * hbar * n * n / (2.0 * m * beta_hat * beta_hat);
    } else {
      const double c = m * spec.alpha2 / (sd * hbar * hbar);
      const bool upper = id == "KIII.3-";
      if (beta_hat == 0.0) {
        if (!upper) throw BranchError("case KIII.3+: the lower branch does not exist for beta-hat = 0");
        e = -hbar * hbar * c * c / (2.0 * m * n * n);
      } else {
        const double nt2 = n * n + 2.0 * beta_hat * c;
        const double rad = 1.0 - 4.0 * beta_hat * beta_hat * c * c / (nt2 * nt2);
        if (rad < 0.0 || nt2 <= 0.0) throw BranchError("case " + std::string(id) + ": complex energy, no real level");
        const double pm = upper ? -1.0 : 1.0;
        e = -hbar * hbar * nt2 / (4.0 * m * beta_hat * beta_hat) * (1.0 + pm * std::sqrt(rad));
      }
    }
  } else {
    throw PatternMismatchError("unknown special case id '" + std::string(id) + "'");
  }

  verify_branch(spec, qn, e, id);
  EnergyLevel lv;
  lv.energy = e;
  lv.residual = quantization_residual(spec, qn, e);
  lv.qn = qn;
  lv.n_aggregate = n;
  lv.window_id = 0;
  lv.provenance = Provenance::closed_form;
  return lv;
}

}  // namespace koenigs
