#include "koenigs/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "koenigs/errors.hpp"
#include "koenigs/quadrature.hpp"
#include "koenigs/specialfn.hpp"

namespace koenigs {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

enum class FactorKind { poschl_teller, legendre, radial_oscillator, line_oscillator, coulomb };

// Divisor applied to a factor inside the flat wave-function so that the
// squared factor integrates to one against plain ds.
enum class Jacobian { none, sqrt_sin, sqrt_s, s };

struct Factor {
  FactorKind kind = FactorKind::radial_oscillator;
  int n = 0;
  double p1 = 0.0;  // PT sine index, oscillator/Coulomb lambda, Legendre order
  double p2 = 0.0;  // PT cosine index
  double omega = 0.0;
  double bohr = 0.0;
  Jacobian jac = Jacobian::none;
};

// Chart axes are ordered so that the principal factor is always index 2:
//   spherical (phi, theta, r), circular_polar (phi, z, rho), cartesian (x, y, z).
using Factors = std::array<Factor, 3>;

double hbar_over_m_omega(const UnitScalars& u, double omega) { return u.hbar / (u.mass * omega); }

// Reflection s -> pi/2 - s of a Poschl-Teller factor: the indices swap and the
// Jacobi polynomial picks up (-1)^n.
Factor mirrored(const Factor& f) {
  Factor m = f;
  std::swap(m.p1, m.p2);
  return m;
}

double mirror_sign(const Factor& f) { return f.n % 2 == 0 ? 1.0 : -1.0; }

double pt_value(const Factor& f, double s) {
  if (s <= 0.0 || s >= kHalfPi) {
    const double exponent = (s <= 0.0 ? f.p1 : f.p2) + 0.5;
    if (exponent > 0.0) return 0.0;
    throw SingularPointError("wave-function is singular on the sector boundary");
  }
  return specialfn::poschl_teller_wf(f.n, f.p1, f.p2, s);
}

double factor_value(const Factor& f, double s, const UnitScalars& units) {
  switch (f.kind) {
    case FactorKind::poschl_teller:
      return pt_value(f, s);
    case FactorKind::legendre: {
      const double c = std::cos(s);
      if (std::abs(c) >= 1.0) return 0.0;
      return specialfn::assoc_legendre_neg_order_normalized(f.n, f.p1, c);
    }
    case FactorKind::radial_oscillator:
      if (s <= 0.0) return 0.0;
      return specialfn::radial_ho_wf(f.n, f.p1, f.omega, s, units);
    case FactorKind::line_oscillator:
      return specialfn::harmonic_oscillator_wf(f.n, f.omega, s, units);
    case FactorKind::coulomb:
      if (s <= 0.0) return 0.0;
      return specialfn::coulomb_radial_wf(f.n, f.p1, f.bohr, s);
  }
  return 0.0;
}

double jacobian_divisor(Jacobian j, double s) {
  switch (j) {
    case Jacobian::none: return 1.0;
    case Jacobian::sqrt_sin: return std::sqrt(std::sin(s));
    case Jacobian::sqrt_s: return std::sqrt(s);
    case Jacobian::s: return s;
  }
  return 1.0;
}

bool scheme_fits(SpaceKind kind, Chart chart, QnScheme scheme) {
  switch (chart) {
    case Chart::cartesian: return scheme == QnScheme::cartesian && (kind == SpaceKind::KI || kind == SpaceKind::KII);
    case Chart::circular_polar:
      return scheme == QnScheme::cylindrical && (kind == SpaceKind::KI || kind == SpaceKind::KII);
    case Chart::spherical:
      return (kind == SpaceKind::KI && scheme == QnScheme::polar) ||
             (kind == SpaceKind::KIII && scheme == QnScheme::coulomb);
  }
  return false;
}

Factors build_factors(const BoundState& st) {
  const auto& ix = st.indices;
  const auto& n = st.level.qn.labels;
  const double w = ix.omega_eff.value;
  const double kx = ix.k_eff[0].value;
  const double ky = ix.k_eff[1].value;
  const double kz = ix.k_eff[2].value;
  Factors fs;
  const auto rho = [&](int deg, double lambda, Jacobian jac) {
    return Factor{FactorKind::radial_oscillator, deg, lambda, 0.0, w, 0.0, jac};
  };
  switch (st.spec.kind) {
    case SpaceKind::KI:
      if (st.chart == Chart::spherical) {
        fs[0] = {FactorKind::poschl_teller, n[2], ky, kx, 0, 0, Jacobian::none};
        fs[1] = {FactorKind::poschl_teller, n[1], ix.lambda1, kz, 0, 0, Jacobian::sqrt_sin};
        fs[2] = rho(n[0], ix.lambda2, Jacobian::s);
      } else if (st.chart == Chart::cartesian) {
        fs[0] = rho(n[0], kx, Jacobian::none);
        fs[1] = rho(n[1], ky, Jacobian::none);
        fs[2] = rho(n[2], kz, Jacobian::none);
      } else {
        fs[0] = {FactorKind::poschl_teller, n[2], ky, kx, 0, 0, Jacobian::none};
        fs[1] = rho(n[1], kz, Jacobian::none);
        fs[2] = rho(n[0], ix.lambda1, Jacobian::sqrt_s);
      }
      break;
    case SpaceKind::KII:
      if (st.chart == Chart::cartesian) {
        fs[0] = rho(n[0], kx, Jacobian::none);
        fs[1] = rho(n[1], ky, Jacobian::none);
        fs[2] = {FactorKind::line_oscillator, n[2], 0, 0, w, 0, Jacobian::none};
      } else {
        fs[0] = {FactorKind::poschl_teller, n[2], ky, kx, 0, 0, Jacobian::none};
        fs[1] = {FactorKind::line_oscillator, n[1], 0, 0, w, 0, Jacobian::none};
        fs[2] = rho(n[0], ix.lambda1, Jacobian::sqrt_s);
      }
      break;
    case SpaceKind::KIII:
      fs[0] = {FactorKind::poschl_teller, n[2], ky, kx, 0, 0, Jacobian::none};
      fs[1] = {FactorKind::legendre, n[1], ix.lambda1, 0, 0, 0, Jacobian::none};
      fs[2] = {FactorKind::coulomb, n[0], ix.lambda2, 0, 0, st.coulomb_scale, Jacobian::s};
      break;
    default:
      throw KindError("no bound states for " + std::string(to_string(st.spec.kind)));
  }
  return fs;
}

// Chart coordinates of p, reflected into the sector where the state is defined.
// For the angles on (0, pi/2) the complement pi/2 - q is computed directly from
// the coordinates, so that both ends of the sector keep full precision.
struct ChartPoint {
  std::array<double, 3> q{};
  std::array<double, 3> complement{};
};

ChartPoint chart_coordinates(const BoundState& st, const Point3& p) {
  const double x = std::abs(p.x);
  const double y = std::abs(p.y);
  const double z = st.spec.kind == SpaceKind::KI ? std::abs(p.z) : p.z;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  switch (st.chart) {
    case Chart::cartesian:
      return {{x, y, z}, {nan, nan, nan}};
    case Chart::spherical: {
      const double r = std::sqrt(x * x + y * y + z * z);
      if (r < kSingularTol) throw SingularPointError("spherical chart: the origin is excluded");
      const double rho = std::hypot(x, y);
      return {{std::atan2(y, x), std::atan2(rho, z), r}, {std::atan2(x, y), std::atan2(z, rho), nan}};
    }
    case Chart::circular_polar: {
      const double rho = std::hypot(x, y);
      if (rho < kSingularTol) throw SingularPointError("circular-polar chart: the z axis is excluded");
      return {{std::atan2(y, x), z, rho}, {std::atan2(x, y), nan, nan}};
    }
  }
  return {};
}

// One-dimensional eigenvalue of a non-principal factor.
double factor_energy(const Factor& f, const UnitScalars& u) {
  switch (f.kind) {
    case FactorKind::radial_oscillator: return u.hbar * f.omega * (2.0 * f.n + f.p1 + 1.0);
    case FactorKind::line_oscillator: return u.hbar * f.omega * (f.n + 0.5);
    default: return 0.0;
  }
}

// ---- normalization -------------------------------------------------------

enum class Weight { one, sq, inv_sq, inv, inv_sin2, inv_cos2 };

struct Term {
  double coef = 0.0;
  std::array<Weight, 3> w{Weight::one, Weight::one, Weight::one};
};

std::vector<Term> separable_terms(const BoundState& st) {
  const SpaceSpec& s = st.spec;
  using W = Weight;
  std::vector<Term> t;
  t.push_back({s.delta, {W::one, W::one, W::one}});
  switch (s.kind) {
    case SpaceKind::KI:
      if (st.chart == Chart::spherical) {
        t.push_back({s.alpha, {W::one, W::one, W::sq}});
        t.push_back({s.beta_x, {W::inv_cos2, W::inv_sin2, W::inv_sq}});
        t.push_back({s.beta_y, {W::inv_sin2, W::inv_sin2, W::inv_sq}});
        t.push_back({s.beta_z, {W::one, W::inv_cos2, W::inv_sq}});
      } else if (st.chart == Chart::cartesian) {
        t.push_back({s.alpha, {W::sq, W::one, W::one}});
        t.push_back({s.alpha, {W::one, W::sq, W::one}});
        t.push_back({s.alpha, {W::one, W::one, W::sq}});
        t.push_back({s.beta_x, {W::inv_sq, W::one, W::one}});
        t.push_back({s.beta_y, {W::one, W::inv_sq, W::one}});
        t.push_back({s.beta_z, {W::one, W::one, W::inv_sq}});
      } else {
        t.push_back({s.alpha, {W::one, W::one, W::sq}});
        t.push_back({s.alpha, {W::one, W::sq, W::one}});
        t.push_back({s.beta_x, {W::inv_cos2, W::one, W::inv_sq}});
        t.push_back({s.beta_y, {W::inv_sin2, W::one, W::inv_sq}});
        t.push_back({s.beta_z, {W::one, W::inv_sq, W::one}});
      }
      break;
    case SpaceKind::KII:
      if (st.chart == Chart::cartesian) {
        t.push_back({s.alpha, {W::sq, W::one, W::one}});
        t.push_back({s.alpha, {W::one, W::sq, W::one}});
        t.push_back({4.0 * s.alpha, {W::one, W::one, W::sq}});
        t.push_back({s.beta_x, {W::inv_sq, W::one, W::one}});
        t.push_back({s.beta_y, {W::one, W::inv_sq, W::one}});
      } else {
        t.push_back({s.alpha, {W::one, W::one, W::sq}});
        t.push_back({4.0 * s.alpha, {W::one, W::sq, W::one}});
        t.push_back({s.beta_x, {W::inv_cos2, W::one, W::inv_sq}});
        t.push_back({s.beta_y, {W::inv_sin2, W::one, W::inv_sq}});
      }
      break;
    case SpaceKind::KIII:
      t.push_back({-s.alpha1, {W::one, W::one, W::inv}});
      t.push_back({s.beta, {W::inv_cos2, W::inv_sin2, W::inv_sq}});
      t.push_back({s.gamma, {W::inv_sin2, W::inv_sin2, W::inv_sq}});
      break;
    default:
      break;
  }
  std::erase_if(t, [](const Term& x) { return x.coef == 0.0; });
  return t;
}

double weight_value(Weight w, double s) {
  switch (w) {
    case Weight::one: return 1.0;
    case Weight::sq: return s * s;
    case Weight::inv_sq: return 1.0 / (s * s);
    case Weight::inv: return 1.0 / s;
    case Weight::inv_sin2: {
      const double v = std::sin(s);
      return 1.0 / (v * v);
    }
    case Weight::inv_cos2: {
      const double v = std::cos(s);
      return 1.0 / (v * v);
    }
  }
  return 1.0;
}

struct Domain {
  double lo = 0.0;
  double hi = 0.0;
  double factor = 1.0;  // 2 for the even line oscillator folded onto (0, hi)
  double lo_power = 0.0;  // density ~ s^p at lo (or sin^p for Legendre)
  double hi_power = 0.0;  // only finite for angular factors
  bool angular = false;
};

// Smallest x beyond the envelope peak where p ln x - c x^q drops 60 below its maximum.
double envelope_cutoff(double p, double q) {
  const double peak = p > 0.0 ? std::pow(p / q, 1.0 / q) : 0.0;
  const double top = p > 0.0 ? p * std::log(peak) - std::pow(peak, q) : 0.0;
  double x = std::max(1.0, 1.5 * peak);
  while (p * std::log(x) - std::pow(x, q) - top > -60.0) x *= 1.05;
  return x;
}

Domain factor_domain(const Factor& f, const UnitScalars& u) {
  Domain d;
  switch (f.kind) {
    case FactorKind::poschl_teller:
      d = {0.0, kHalfPi, 1.0, 2.0 * f.p1 + 1.0, 2.0 * f.p2 + 1.0, true};
      break;
    case FactorKind::legendre:
      d = {0.0, std::numbers::pi, 1.0, 2.0 * f.p1 + 1.0, 2.0 * f.p1 + 1.0, true};
      break;
    case FactorKind::radial_oscillator: {
      const double l = std::sqrt(hbar_over_m_omega(u, f.omega));
      const double p = 2.0 * f.p1 + 1.0 + 4.0 * f.n;
      d = {0.0, l * envelope_cutoff(std::max(p, 0.0), 2.0), 1.0, 2.0 * f.p1 + 1.0, 0.0, false};
      break;
    }
    case FactorKind::line_oscillator: {
      const double l = std::sqrt(hbar_over_m_omega(u, f.omega));
      d = {0.0, l * envelope_cutoff(2.0 * f.n, 2.0), 2.0, 0.0, 0.0, false};
      break;
    }
    case FactorKind::coulomb: {
      const double nu = f.n + f.p1 + 0.5;
      const double p = 2.0 * f.p1 + 1.0 + 2.0 * f.n;
      d = {0.0, 0.5 * f.bohr * nu * envelope_cutoff(p, 1.0), 1.0, 2.0 * f.p1 + 1.0, 0.0, false};
      break;
    }
  }
  return d;
}

Weight reflected(Weight w) {
  if (w == Weight::inv_sin2) return Weight::inv_cos2;
  if (w == Weight::inv_cos2) return Weight::inv_sin2;
  return w;
}

// Sigmoidal grade for a density ~ s^p at the lower end: the transformed
// integrand then behaves like t^{g (p + 1) - 1}.
int grade_for(double p) { return std::clamp(static_cast<int>(std::ceil(4.0 / (p + 1.0))), 3, 16); }

double factor_density(const Factor& f, double s, const UnitScalars& u) {
  const double v = factor_value(f, s, u);
  const double extra = f.kind == FactorKind::legendre ? std::sin(s) : 1.0;
  return v * v * extra;
}

}  // namespace

std::string_view to_string(Chart chart) {
  switch (chart) {
    case Chart::cartesian: return "cartesian";
    case Chart::spherical: return "spherical";
    case Chart::circular_polar: return "circular_polar";
  }
  return "?";
}

Chart parse_chart(std::string_view text) {
  for (auto c : {Chart::cartesian, Chart::spherical, Chart::circular_polar}) {
    if (text == to_string(c)) return c;
  }
  throw ParameterError("unknown chart '" + std::string(text) + "'");
}

Chart default_chart(QnScheme scheme) {
  switch (scheme) {
    case QnScheme::cartesian: return Chart::cartesian;
    case QnScheme::cylindrical: return Chart::circular_polar;
    default: return Chart::spherical;
  }
}

BoundState assemble(const SpaceSpec& spec, const EnergyLevel& level, Chart chart) {
  validate(spec);
  if (spectrum_type(spec) == SpectrumType::continuous_only) {
    throw KindError(std::string(to_string(spec.kind)) + " has no bound states");
  }
  if (level.provenance == Provenance::oracle) {
    throw ParameterError("assemble: oracle levels carry no wave-function data; use a solver or closed-form level");
  }
  if (!scheme_fits(spec.kind, chart, level.qn.scheme)) {
    throw KindError("chart '" + std::string(to_string(chart)) + "' with '" + std::string(to_string(level.qn.scheme)) +
                    "' labels does not separate " + std::string(to_string(spec.kind)));
  }
  BoundState st;
  st.spec = spec;
  st.level = level;
  st.chart = chart;
  st.indices = effective_indices(spec, level.qn, level.energy);
  if (!st.indices.all_real()) throw ParameterError("assemble: an effective index is imaginary at this energy");
  if (spec.kind == SpaceKind::KIII) {
    if (!(st.indices.alpha_eff > 0.0)) throw ParameterError("assemble: KIII bound states need alpha2 - alpha1 E > 0");
    st.coulomb_scale = spec.units.hbar * spec.units.hbar / (spec.units.mass * st.indices.alpha_eff);
  } else if (!(st.indices.omega_eff.value > 0.0)) {
    throw ParameterError("assemble: the effective frequency vanishes, no bound state");
  }
  // Probe every factor once so that index-range violations surface here.
  const Factors fs = build_factors(st);
  for (const auto& f : fs) {
    const Domain d = factor_domain(f, spec.units);
    factor_value(f, 0.5 * (d.lo + d.hi), spec.units);
  }
  return st;
}

double evaluate_flat(const BoundState& st, const Point3& p) {
  const Factors fs = build_factors(st);
  const ChartPoint cp = chart_coordinates(st, p);
  const auto& q = cp.q;
  double v = 1.0;
  for (int i = 0; i < 3; ++i) {
    double num;
    if (fs[i].kind == FactorKind::poschl_teller && q[i] > 0.25 * std::numbers::pi) {
      num = mirror_sign(fs[i]) * pt_value(mirrored(fs[i]), cp.complement[i]);
    } else {
      num = factor_value(fs[i], q[i], st.spec.units);
    }
    // a factor that vanishes at the sector edge vanishes faster than its divisor
    v *= num == 0.0 ? 0.0 : num / jacobian_divisor(fs[i].jac, q[i]);
  }
  return v;
}

double evaluate(const BoundState& st, const Point3& p) {
  const double f = metric_factor(st.spec, p);
  return st.norm_const * std::pow(f, -0.25) * evaluate_flat(st, p);
}

double principal_factor(const BoundState& st, double s) {
  return factor_value(build_factors(st)[2], s, st.spec.units);
}

double length_scale(const BoundState& st) {
  const Factor f = build_factors(st)[2];
  if (f.kind == FactorKind::coulomb) return f.bohr * (f.n + f.p1 + 0.5);
  return std::sqrt(hbar_over_m_omega(st.spec.units, f.omega));
}

NormReport normalize(BoundState& st, const QuadConfig& cfg) {
  const Factors fs = build_factors(st);
  const UnitScalars& u = st.spec.units;
  std::array<Domain, 3> dom;
  for (int i = 0; i < 3; ++i) dom[i] = factor_domain(fs[i], u);

  struct Integral {
    double value;
    double rel_err;
    int nodes;
  };
  std::map<std::pair<int, Weight>, Integral> cache;
  auto axis_integral = [&](int axis, Weight w) -> Integral {
    auto key = std::make_pair(axis, w);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const Domain& d = dom[axis];
    double lo_p = d.lo_power;
    double hi_p = d.hi_power;
    const bool legendre = fs[axis].kind == FactorKind::legendre;
    switch (w) {
      case Weight::inv_sq: lo_p -= 2.0; break;
      case Weight::inv: lo_p -= 1.0; break;
      case Weight::inv_sin2:
        lo_p -= 2.0;
        if (legendre) hi_p -= 2.0;
        break;
      case Weight::inv_cos2: hi_p -= 2.0; break;
      default: break;
    }
    if (lo_p <= -1.0 || (d.angular && hi_p <= -1.0)) {
      throw DomainError("normalize: an inverse-square term of f makes the norm integral diverge "
                        "(effective index too small); the state is not normalizable");
    }
    auto run = [&](const Factor& fac, Weight wt, double a, double b, double p) {
      auto integrand = [&](double s) { return factor_density(fac, s, u) * weight_value(wt, s); };
      return quadrature::integrate_doubling(integrand, a, b, cfg.rel_tol, grade_for(p), cfg.n_start, cfg.n_max);
    };
    quadrature::Estimate est;
    if (fs[axis].kind == FactorKind::poschl_teller) {
      // Both halves are integrated from their own sector edge, the upper one
      // through the reflected factor.
      const double mid = 0.25 * std::numbers::pi;
      const auto lower = run(fs[axis], w, 0.0, mid, lo_p);
      const auto upper = run(mirrored(fs[axis]), reflected(w), 0.0, mid, hi_p);
      est.value = lower.value + upper.value;
      est.error = lower.error + upper.error;
      est.nodes = std::max(lower.nodes, upper.nodes);
    } else {
      est = run(fs[axis], w, d.lo, d.hi, lo_p);
    }
    Integral out{d.factor * est.value, est.value != 0.0 ? est.error / std::abs(est.value) : est.error, est.nodes};
    cache.emplace(key, out);
    return out;
  };

  double total = 0.0;
  double err = 0.0;
  int max_nodes = 0;
  for (const Term& t : separable_terms(st)) {
    double prod = t.coef;
    double rel = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Integral in = axis_integral(i, t.w[i]);
      prod *= in.value;
      rel += in.rel_err;
      max_nodes = std::max(max_nodes, in.nodes);
    }
    total += prod;
    err += std::abs(prod) * rel;
  }
  if (!(total > 0.0)) {
    throw DomainError("normalize: int phi^2 f d^3x is not positive; f is not a positive metric on the support");
  }
  NormReport rep;
  rep.weighted_norm = total;
  rep.error_estimate = err / total;
  rep.max_nodes = max_nodes;
  rep.norm_const = 1.0 / std::sqrt(total);
  if (rep.error_estimate > 1e-6) {
    throw AccuracyError("normalize: quadrature error estimate " + std::to_string(rep.error_estimate) +
                        " exceeds 1e-6");
  }
  st.norm_const = rep.norm_const;
  st.norm_error = rep.error_estimate;
  return rep;
}

RadialGrid default_residual_grid(const BoundState& st) {
  const Factor f = build_factors(st)[2];
  const double l = length_scale(st);
  const Domain d = factor_domain(f, st.spec.units);
  RadialGrid g;
  g.r_min = 0.05 * l;
  g.r_max = std::max(d.hi, 2.0 * g.r_min);
  g.n_points = std::max(400, static_cast<int>(std::ceil((g.r_max - g.r_min) / (0.005 * l))) + 1);
  return g;
}

double ode_residual(const BoundState& st, const RadialGrid& grid) {
  const Factors fs = build_factors(st);
  const Factor& f = fs[2];
  const UnitScalars& u = st.spec.units;
  const double l = length_scale(st);
  if (grid.n_points < 2 || !(grid.r_max > grid.r_min) || !(grid.r_min > 0.0)) {
    throw ConfigError("ode_residual: grid needs r_max > r_min > 0 and at least two points");
  }
  const double step = (grid.r_max - grid.r_min) / (grid.n_points - 1);
  if (step > 1e-2 * l) {
    throw ConfigError("ode_residual: grid step exceeds 1e-2 of the state's length scale");
  }
  const double h_max = 5e-4 * l;
  const double c = u.hbar * u.hbar / (2.0 * u.mass);
  double eps = st.spec.delta * st.level.energy;
  if (st.chart != Chart::spherical) eps -= factor_energy(fs[0], u) + factor_energy(fs[1], u);

  auto potential = [&](double s) {
    switch (f.kind) {
      case FactorKind::radial_oscillator:
        return 0.5 * u.mass * f.omega * f.omega * s * s + c * (f.p1 * f.p1 - 0.25) / (s * s);
      case FactorKind::line_oscillator:
        return 0.5 * u.mass * f.omega * f.omega * s * s;
      case FactorKind::coulomb:
        return -st.indices.alpha_eff / s + c * (f.p1 * f.p1 - 0.25) / (s * s);
      default:
        return 0.0;
    }
  };

  double num = 0.0;
  double den_eps = 0.0;
  double den_kin = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double s = grid.r_min + i * step;
    // Near the origin the factor behaves like a power of s, so the step shrinks with s.
    const double h = std::min(h_max, 2e-3 * s);
    if (s - h <= 0.0) continue;
    const double v0 = factor_value(f, s, u);
    const double vp = factor_value(f, s + h, u);
    const double vm = factor_value(f, s - h, u);
    const double kin = -c * (vp - 2.0 * v0 + vm) / (h * h);
    const double r = kin + (potential(s) - eps) * v0;
    num += r * r;
    den_eps += eps * eps * v0 * v0;
    den_kin += kin * kin;
  }
  const double den = std::sqrt(std::max(den_eps, den_kin));
  if (!(den > 0.0)) throw ConfigError("ode_residual: the factor vanishes on the whole grid");
  return std::sqrt(num) / den;
}

}  // namespace koenigs
