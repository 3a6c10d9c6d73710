#include "koenigs/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "koenigs/errors.hpp"
#include "spectra_internal.hpp"

namespace koenigs {
namespace {

// Radicand a + b E. Rounding right at a window edge can leave a tiny negative
// value; anything within 1e-12 of the operand scale counts as zero.
struct Linear {
  double a = 0.0;
  double b = 0.0;
  const char* tag = "";

  double at(double e) const {
    const double v = a + b * e;
    if (v < 0.0 && v > -1e-12 * (std::abs(a) + std::abs(b * e))) return 0.0;
    return v;
  }
};

FlaggedIndex flagged_sqrt(double radicand, int sign = 1) {
  if (radicand >= 0.0) return {sign * std::sqrt(radicand), true};
  return {std::sqrt(-radicand), false};
}

double two_m_over_hbar2(const SpaceSpec& s) { return 2.0 * s.units.mass / (s.units.hbar * s.units.hbar); }

// The radicands entering the quantization condition of KI/KII/KIII.
std::vector<Linear> condition_radicands(const SpaceSpec& s) {
  const double c = two_m_over_hbar2(s);
  std::vector<Linear> out;
  switch (s.kind) {
    case SpaceKind::KI:
      out.push_back({s.omega * s.omega, -2.0 * s.alpha / s.units.mass, "omega_eff real"});
      out.push_back({s.k_x * s.k_x, -c * s.beta_x, "k_eff_x real"});
      out.push_back({s.k_y * s.k_y, -c * s.beta_y, "k_eff_y real"});
      out.push_back({s.k_z * s.k_z, -c * s.beta_z, "k_eff_z real"});
      break;
    case SpaceKind::KII:
      out.push_back({s.omega * s.omega, -2.0 * s.alpha / s.units.mass, "omega_eff real"});
      out.push_back({s.k_x * s.k_x, -c * s.beta_x, "k_eff_x real"});
      out.push_back({s.k_y * s.k_y, -c * s.beta_y, "k_eff_y real"});
      break;
    case SpaceKind::KIII:
      out.push_back({s.k1 * s.k1, -c * s.beta, "k_eff_1 real"});
      out.push_back({s.k2 * s.k2, -c * s.gamma, "k_eff_2 real"});
      break;
    case SpaceKind::KIV:
    case SpaceKind::KV:
      throw KindError(std::string(to_string(s.kind)) + " has no discrete quantization condition");
  }
  return out;
}

void check_labels(const QuantumNumbers& qn) {
  for (int v : qn.labels) {
    if (v < 0) throw ParameterError("quantum numbers must be non-negative");
  }
  for (int s : qn.branch_signs) {
    if (s != 1 && s != -1) throw ParameterError("branch signs must be +1 or -1");
  }
}

[[noreturn]] void scheme_error(SpaceKind kind, QnScheme scheme) {
  throw ParameterError("label scheme '" + std::string(to_string(scheme)) + "' is not used by " +
                       std::string(to_string(kind)));
}

}  // namespace

std::string_view to_string(QnScheme scheme) {
  switch (scheme) {
    case QnScheme::polar: return "polar";
    case QnScheme::cartesian: return "cartesian";
    case QnScheme::coulomb: return "coulomb";
    case QnScheme::cylindrical: return "cylindrical";
  }
  return "?";
}

QnScheme parse_qn_scheme(std::string_view text) {
  for (auto s : {QnScheme::polar, QnScheme::cartesian, QnScheme::coulomb, QnScheme::cylindrical}) {
    if (text == to_string(s)) return s;
  }
  throw ParameterError("unknown quantum-number scheme '" + std::string(text) + "'");
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::root_solver: return "root_solver";
    case Provenance::closed_form: return "closed_form";
    case Provenance::oracle: return "oracle";
  }
  return "?";
}

std::string_view to_string(SpectrumType t) {
  return t == SpectrumType::continuous_only ? "continuous_only" : "discrete_candidates";
}

int aggregate_n(SpaceKind kind, const QuantumNumbers& qn) {
  check_labels(qn);
  const auto& n = qn.labels;
  switch (kind) {
    case SpaceKind::KI:
      if (qn.scheme == QnScheme::coulomb) scheme_error(kind, qn.scheme);
      return n[0] + n[1] + n[2];
    case SpaceKind::KII:
      if (qn.scheme == QnScheme::cartesian) return 2 * (n[0] + n[1]) + n[2];
      if (qn.scheme == QnScheme::cylindrical) return 2 * (n[0] + n[2]) + n[1];
      scheme_error(kind, qn.scheme);
    case SpaceKind::KIII:
      if (qn.scheme != QnScheme::coulomb) scheme_error(kind, qn.scheme);
      return 2 + 2 * n[2] + n[1] + n[0];
    case SpaceKind::KIV:
    case SpaceKind::KV:
      return n[0] + n[1] + n[2];
  }
  return 0;
}

QuantumNumbers labels_for_n(SpaceKind kind, int n) {
  if (n < 0) throw ParameterError("aggregate N must be non-negative");
  QuantumNumbers qn;
  switch (kind) {
    case SpaceKind::KI:
    case SpaceKind::KIV:
    case SpaceKind::KV:
      qn.scheme = QnScheme::polar;
      qn.labels = {n, 0, 0};
      break;
    case SpaceKind::KII:
      qn.scheme = QnScheme::cylindrical;
      qn.labels = {0, n, 0};
      break;
    case SpaceKind::KIII:
      if (n < 2) throw ParameterError("KIII requires N >= 2");
      qn.scheme = QnScheme::coulomb;
      qn.labels = {n - 2, 0, 0};
      break;
  }
  return qn;
}

bool EffectiveIndices::all_real() const {
  if ((kind == SpaceKind::KI || kind == SpaceKind::KII) && !omega_eff.real) return false;
  for (int i = 0; i < k_count; ++i)
    if (!k_eff[i].real) return false;
  if (kind == SpaceKind::KIII && !kappa.real) return false;
  return true;
}

EffectiveIndices effective_indices(const SpaceSpec& spec, const QuantumNumbers& qn, double energy) {
  check_labels(qn);
  EffectiveIndices ix;
  ix.kind = spec.kind;
  ix.branch_signs = qn.branch_signs;
  const auto& sg = qn.branch_signs;
  const double c = two_m_over_hbar2(spec);
  const double m = spec.units.mass;
  const double hbar = spec.units.hbar;
  const double e = energy;
  switch (spec.kind) {
    case SpaceKind::KI:
    case SpaceKind::KII: {
      const auto rads = condition_radicands(spec);
      ix.omega_eff = flagged_sqrt(rads[0].at(e));
      ix.k_count = static_cast<int>(rads.size()) - 1;
      for (int i = 0; i < ix.k_count; ++i) ix.k_eff[i] = flagged_sqrt(rads[i + 1].at(e), sg[i]);
      // Angular indices of the polar and cylindrical charts.
      int n_phi = 0;
      int n_theta = 0;
      if (qn.scheme == QnScheme::polar) {
        n_theta = qn.labels[1];
        n_phi = qn.labels[2];
      } else if (qn.scheme == QnScheme::cylindrical) {
        n_phi = qn.labels[2];
      }
      ix.lambda1 = 2.0 * n_phi + ix.k_eff[0].value + ix.k_eff[1].value + 1.0;
      ix.lambda2 = spec.kind == SpaceKind::KI ? 2.0 * n_theta + ix.lambda1 + ix.k_eff[2].value + 1.0 : ix.lambda1;
      break;
    }
    case SpaceKind::KIII: {
      const auto rads = condition_radicands(spec);
      ix.k_count = 2;
      ix.k_eff[0] = flagged_sqrt(rads[0].at(e), sg[0]);
      ix.k_eff[1] = flagged_sqrt(rads[1].at(e), sg[1]);
      const int l = qn.scheme == QnScheme::coulomb ? qn.labels[1] : 0;
      const int n_phi = qn.labels[2];
      ix.lambda1 = 2.0 * n_phi + ix.k_eff[0].value + ix.k_eff[1].value + 1.0;
      ix.lambda2 = l + ix.lambda1 + 0.5;
      ix.alpha_eff = spec.alpha2 - spec.alpha1 * e;
      const double de = spec.delta * e;
      if (de < 0.0) {
        ix.kappa = {ix.alpha_eff * std::sqrt(-m / (2.0 * de)) / hbar, true};
      } else if (de > 0.0) {
        ix.kappa = {std::abs(ix.alpha_eff) * std::sqrt(m / (2.0 * de)) / hbar, false};
      } else {
        ix.kappa = {std::numeric_limits<double>::infinity(), false};
      }
      break;
    }
    case SpaceKind::KIV:
    case SpaceKind::KV: {
      ix.k_count = 3;
      const double k1 = spec.k1 * spec.k1;
      const double k2 = spec.k2 * spec.k2;
      ix.k_eff[0] = flagged_sqrt(k2 + k1 - c * (spec.beta + spec.alpha) * e, sg[0]);
      ix.k_eff[1] = flagged_sqrt(k2 - k1 + c * (spec.beta - spec.alpha) * e, sg[1]);
      if (spec.kind == SpaceKind::KIV) {
        ix.k_eff[2] = flagged_sqrt(spec.k3 * spec.k3 - c * spec.gamma * e, sg[2]);
      } else {
        ix.k_eff[2] = {spec.k3 - 2.0 * m * spec.gamma * e / hbar, true};
      }
      const int n_theta = qn.labels[1];
      const int n_phi = qn.labels[2];
      ix.lambda1 = n_phi + 0.5 * (ix.k_eff[0].value + ix.k_eff[1].value + 1.0);
      if (spec.kind == SpaceKind::KIV) ix.lambda2 = 2.0 * n_theta + ix.lambda1 + ix.k_eff[2].value + 1.0;
      break;
    }
  }
  return ix;
}

std::vector<ValidityWindow> validity_windows(const SpaceSpec& spec, const QuantumNumbers& qn) {
  check_labels(qn);
  ValidityWindow w;
  for (const auto& r : condition_radicands(spec)) {
    if (r.b == 0.0) {
      if (r.a < 0.0) return {};
      continue;
    }
    const double edge = -r.a / r.b;
    if (r.b > 0.0) {
      if (edge > w.lower) w.lower = edge;
    } else {
      if (edge < w.upper) w.upper = edge;
    }
    w.constraints.push_back(r.tag);
  }
  if (spec.kind == SpaceKind::KIII) {
    if (spec.delta == 0.0) return {};
    if (spec.delta > 0.0) {
      w.upper = std::min(w.upper, 0.0);
    } else {
      w.lower = std::max(w.lower, 0.0);
    }
    w.constraints.push_back("delta*E < 0");
  }
  if (!(w.lower < w.upper)) return {};
  return {w};
}

namespace detail {

ResidualTerms residual_terms(const SpaceSpec& spec, const QuantumNumbers& qn, double energy) {
  const int n = aggregate_n(spec.kind, qn);
  const EffectiveIndices ix = effective_indices(spec, qn, energy);
  if (!ix.all_real()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << to_string(spec.kind) << ": E = " << energy << " lies outside every validity window";
    throw OutOfWindowError(msg.str());
  }
  const double hbar = spec.units.hbar;
  switch (spec.kind) {
    case SpaceKind::KI: {
      const double k = ix.k_eff[0].value + ix.k_eff[1].value + ix.k_eff[2].value;
      return {spec.delta * energy, hbar * ix.omega_eff.value * (2.0 * n + k + 3.0)};
    }
    case SpaceKind::KII: {
      const double k = ix.k_eff[0].value + ix.k_eff[1].value;
      return {spec.delta * energy, hbar * ix.omega_eff.value * (n + k + 2.5)};
    }
    case SpaceKind::KIII:
      return {n + ix.k_eff[0].value + ix.k_eff[1].value, ix.kappa.value};
    default:
      throw KindError(std::string(to_string(spec.kind)) + " has no discrete quantization condition");
  }
}

}  // namespace detail

double quantization_residual(const SpaceSpec& spec, const QuantumNumbers& qn, double energy) {
  const auto t = detail::residual_terms(spec, qn, energy);
  return t.lhs - t.rhs;
}

void validate(const SolverConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("solver.") + name + " must be positive and finite");
  };
  positive(cfg.scan_points_per_decade, "scan_points_per_decade");
  positive(cfg.tol_rel, "tol_rel");
  positive(cfg.e_max_abs, "e_max_abs");
  positive(cfg.dedupe_rel, "dedupe_rel");
  for (int s : cfg.branch_signs) {
    if (s != 0 && s != 1 && s != -1) throw ConfigError("solver.branch_signs entries must be +1, -1 or unset");
  }
}

QuantumNumbers with_branch_overrides(QuantumNumbers qn, const SolverConfig& cfg) {
  for (int i = 0; i < 3; ++i) {
    if (cfg.branch_signs[i] != 0) qn.branch_signs[i] = cfg.branch_signs[i];
  }
  return qn;
}

namespace {

// Samples clustered logarithmically towards both ends of (p, q).
void append_segment_samples(double p, double q, double per_decade, std::vector<double>& out) {
  const double width = q - p;
  if (!(width > 0.0)) return;
  const double d_max = 0.5 * width;
  const double d_min = std::max(width * 1e-13, std::numeric_limits<double>::min());
  const double decades = std::log10(d_max / d_min);
  const int count = std::max(2, static_cast<int>(std::ceil(decades * per_decade)));
  for (int i = 0; i <= count; ++i) {
    const double d = d_min * std::pow(10.0, decades * i / count);
    out.push_back(p + d);
    out.push_back(q - d);
  }
}

}  // namespace

SolveResult solve_levels(const SpaceSpec& spec, const QuantumNumbers& qn_in, const SolverConfig& cfg) {
  validate(cfg);
  validate(spec);
  if (spectrum_type(spec) == SpectrumType::continuous_only) {
    throw KindError(std::string(to_string(spec.kind)) + ": only a continuous spectrum exists");
  }
  const QuantumNumbers qn = with_branch_overrides(qn_in, cfg);
  const int n_agg = aggregate_n(spec.kind, qn);
  SolveResult result;
  if (spec.delta == 0.0) {
    result.diagnostics.push_back(std::string(to_string(spec.kind)) +
                                 ": delta = 0 removes the energy from the quantization condition; no levels");
    return result;
  }
  const auto windows = validity_windows(spec, qn);
  if (windows.empty()) {
    result.diagnostics.push_back("no validity window: some effective index is imaginary for every energy");
    return result;
  }
  auto residual = [&](double e) { return quantization_residual(spec, qn, e); };

  for (std::size_t wid = 0; wid < windows.size(); ++wid) {
    const auto& w = windows[wid];
    const double lo = std::max(w.lower, -cfg.e_max_abs);
    const double hi = std::min(w.upper, cfg.e_max_abs);
    if (!(lo < hi)) continue;
    const bool cut_lo = w.lower < -cfg.e_max_abs;
    const bool cut_hi = w.upper > cfg.e_max_abs;

    std::vector<double> breaks = {lo, hi};
    if (lo < 0.0 && hi > 0.0) breaks.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> samples;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      append_segment_samples(breaks[i], breaks[i + 1], cfg.scan_points_per_decade, samples);
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    samples.erase(std::remove_if(samples.begin(), samples.end(), [&](double e) { return !(e > lo && e < hi) || e == 0.0; }),
                  samples.end());

    std::vector<double> values(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) values[i] = residual(samples[i]);

    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      double a = samples[i];
      double b = samples[i + 1];
      double ra = values[i];
      double rb = values[i + 1];
      double root;
      if (ra == 0.0) {
        root = a;
      } else if (rb == 0.0 || std::signbit(ra) == std::signbit(rb)) {
        continue;
      } else {
        while (true) {
          const double mid = 0.5 * (a + b);
          if (mid <= a || mid >= b) break;
          if (b - a <= cfg.tol_rel * std::abs(mid)) break;
          const double rm = residual(mid);
          if (rm == 0.0) {
            a = b = mid;
            break;
          }
          if (std::signbit(rm) == std::signbit(ra)) {
            a = mid;
            ra = rm;
          } else {
            b = mid;
          }
        }
        root = 0.5 * (a + b);
      }
      if ((cut_hi && i + 2 == samples.size()) || (cut_lo && i == 0)) {
        result.diagnostics.push_back("warning: a residual sign change abuts the |E| cutoff; raise e_max_abs");
      }
      EnergyLevel lv;
      lv.energy = root;
      lv.residual = residual(root);
      lv.qn = qn;
      lv.n_aggregate = n_agg;
      lv.window_id = static_cast<int>(wid);
      lv.provenance = Provenance::root_solver;
      result.levels.push_back(lv);
    }
  }

  std::sort(result.levels.begin(), result.levels.end(),
            [](const EnergyLevel& x, const EnergyLevel& y) { return x.energy < y.energy; });
  std::vector<EnergyLevel> unique;
  for (const auto& lv : result.levels) {
    if (!unique.empty()) {
      const double prev = unique.back().energy;
      if (std::abs(lv.energy - prev) <= cfg.dedupe_rel * std::max(std::abs(lv.energy), std::abs(prev))) {
        if (std::abs(lv.residual) < std::abs(unique.back().residual)) unique.back() = lv;
        continue;
      }
    }
    unique.push_back(lv);
  }
  result.levels = std::move(unique);
  if (result.levels.empty()) {
    result.diagnostics.push_back("no sign change of the quantization residual inside the validity window");
  }
  return result;
}

SpectrumType spectrum_type(const SpaceSpec& spec) {
  return (spec.kind == SpaceKind::KIV || spec.kind == SpaceKind::KV) ? SpectrumType::continuous_only
                                                                      : SpectrumType::discrete_candidates;
}

}  // namespace koenigs
