#include "koenigs/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "koenigs/errors.hpp"

namespace koenigs {
namespace {

using S = SpaceSpec;

constexpr SpaceField kMetricKI[] = {{"alpha", &S::alpha},   {"beta_x", &S::beta_x}, {"beta_y", &S::beta_y},
                                    {"beta_z", &S::beta_z}, {"delta", &S::delta}};
constexpr SpaceField kMetricKII[] = {
    {"alpha", &S::alpha}, {"beta_x", &S::beta_x}, {"beta_y", &S::beta_y}, {"delta", &S::delta}};
constexpr SpaceField kMetricKIII[] = {
    {"alpha1", &S::alpha1}, {"beta", &S::beta}, {"gamma", &S::gamma}, {"delta", &S::delta}};
constexpr SpaceField kMetricKIV[] = {
    {"alpha", &S::alpha}, {"beta", &S::beta}, {"gamma", &S::gamma}, {"delta", &S::delta}};

constexpr SpaceField kPotKI[] = {{"omega", &S::omega}, {"k_x", &S::k_x}, {"k_y", &S::k_y}, {"k_z", &S::k_z}};
constexpr SpaceField kPotKII[] = {{"omega", &S::omega}, {"k_x", &S::k_x}, {"k_y", &S::k_y}};
constexpr SpaceField kPotKIII[] = {{"alpha2", &S::alpha2}, {"k1", &S::k1}, {"k2", &S::k2}};
constexpr SpaceField kPotKIV[] = {{"k1", &S::k1}, {"k2", &S::k2}, {"k3", &S::k3}};

constexpr SpaceField kAllFields[] = {
    {"alpha", &S::alpha},   {"alpha1", &S::alpha1}, {"beta", &S::beta},     {"beta_x", &S::beta_x},
    {"beta_y", &S::beta_y}, {"beta_z", &S::beta_z}, {"gamma", &S::gamma},   {"delta", &S::delta},
    {"omega", &S::omega},   {"alpha2", &S::alpha2}, {"k_x", &S::k_x},       {"k_y", &S::k_y},
    {"k_z", &S::k_z},       {"k1", &S::k1},         {"k2", &S::k2},         {"k3", &S::k3}};

bool near_axis(double c) { return std::abs(c) < kSingularTol; }

[[noreturn]] void throw_singular(const SpaceSpec& spec, const char* what) {
  throw SingularPointError(std::string(to_string(spec.kind)) + ": point lies on singular set (" + what + ")");
}

void check_singular(const SpaceSpec& spec, const Point3& p) {
  switch (spec.kind) {
    case SpaceKind::KI:
      if (spec.beta_z != 0.0 && near_axis(p.z)) throw_singular(spec, "z = 0");
      [[fallthrough]];
    case SpaceKind::KII:
      if (spec.beta_x != 0.0 && near_axis(p.x)) throw_singular(spec, "x = 0");
      if (spec.beta_y != 0.0 && near_axis(p.y)) throw_singular(spec, "y = 0");
      break;
    case SpaceKind::KIII:
      if (spec.alpha1 != 0.0 && near_axis(std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z)))
        throw_singular(spec, "r = 0");
      if (spec.beta != 0.0 && near_axis(p.x)) throw_singular(spec, "x = 0");
      if (spec.gamma != 0.0 && near_axis(p.y)) throw_singular(spec, "y = 0");
      break;
    case SpaceKind::KIV:
      if (spec.gamma != 0.0 && near_axis(p.z)) throw_singular(spec, "z = 0");
      [[fallthrough]];
    case SpaceKind::KV:
      if ((spec.alpha != 0.0 || spec.beta != 0.0) && near_axis(p.y)) throw_singular(spec, "y = 0");
      break;
  }
}

// Metric value, generic in the scalar so the numeric-derivative path can run
// in extended precision.
template <class T>
T metric_value(const SpaceSpec& s, T x, T y, T z) {
  const T c = T(s.units.hbar) * T(s.units.hbar) / (T(2) * T(s.units.mass));
  T f = T(s.delta);
  switch (s.kind) {
    case SpaceKind::KI:
      f += T(s.alpha) * (x * x + y * y + z * z);
      if (s.beta_x != 0.0) f += T(s.beta_x) / (x * x);
      if (s.beta_y != 0.0) f += T(s.beta_y) / (y * y);
      if (s.beta_z != 0.0) f += T(s.beta_z) / (z * z);
      break;
    case SpaceKind::KII:
      f += T(s.alpha) * (x * x + y * y + T(4) * z * z);
      if (s.beta_x != 0.0) f += T(s.beta_x) / (x * x);
      if (s.beta_y != 0.0) f += T(s.beta_y) / (y * y);
      break;
    case SpaceKind::KIII:
      if (s.alpha1 != 0.0) f -= T(s.alpha1) / std::sqrt(x * x + y * y + z * z);
      if (s.beta != 0.0) f += T(s.beta) / (x * x);
      if (s.gamma != 0.0) f += T(s.gamma) / (y * y);
      break;
    case SpaceKind::KIV:
    case SpaceKind::KV: {
      T inner = T(0);
      if (s.alpha != 0.0) inner += T(s.alpha) * x / (y * y * std::sqrt(x * x + y * y));
      if (s.beta != 0.0) inner += T(s.beta) / (y * y);
      if (s.kind == SpaceKind::KIV) {
        if (s.gamma != 0.0) inner += T(s.gamma) / (z * z);
      } else {
        f += T(s.gamma) * z;
      }
      f += c * inner;
      break;
    }
  }
  return f;
}

// Adds b / u^2 and its derivatives to axis a of the jet.
void add_inverse_square(MetricJet& jet, int a, double b, double u) {
  if (b == 0.0) return;
  const double u2 = u * u;
  jet.f += b / u2;
  jet.grad[a] += -2.0 * b / (u2 * u);
  jet.hess_diag[a] += 6.0 * b / (u2 * u2);
}

// Adds coef * x / (y^2 sqrt(x^2+y^2)) and its derivatives.
void add_centrifugal(MetricJet& jet, double coef, double x, double y) {
  if (coef == 0.0) return;
  const double rho = std::sqrt(x * x + y * y);
  const double r1 = 1.0 / rho;
  const double r3 = r1 * r1 * r1;
  const double r5 = r3 * r1 * r1;
  const double iy = 1.0 / y;
  const double iy2 = iy * iy;
  jet.f += coef * x * iy2 * r1;
  jet.grad[0] += coef * r3;
  jet.hess_diag[0] += coef * (-3.0 * x * r5);
  jet.grad[1] += coef * (-x * (2.0 * iy2 * iy * r1 + iy * r3));
  jet.hess_diag[1] += coef * x * (6.0 * iy2 * iy2 * r1 + 3.0 * iy2 * r3 + 3.0 * r5);
}

MetricJet raw_jet(const SpaceSpec& s, const Point3& p) {
  MetricJet jet;
  jet.f = s.delta;
  const double q[3] = {p.x, p.y, p.z};
  switch (s.kind) {
    case SpaceKind::KI:
    case SpaceKind::KII: {
      const double zw = s.kind == SpaceKind::KII ? 4.0 : 1.0;
      const double w[3] = {1.0, 1.0, zw};
      for (int a = 0; a < 3; ++a) {
        jet.f += s.alpha * w[a] * q[a] * q[a];
        jet.grad[a] += 2.0 * s.alpha * w[a] * q[a];
        jet.hess_diag[a] += 2.0 * s.alpha * w[a];
      }
      add_inverse_square(jet, 0, s.beta_x, p.x);
      add_inverse_square(jet, 1, s.beta_y, p.y);
      if (s.kind == SpaceKind::KI) add_inverse_square(jet, 2, s.beta_z, p.z);
      break;
    }
    case SpaceKind::KIII: {
      if (s.alpha1 != 0.0) {
        const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        const double r3 = r * r * r;
        const double r5 = r3 * r * r;
        jet.f -= s.alpha1 / r;
        for (int a = 0; a < 3; ++a) {
          jet.grad[a] += s.alpha1 * q[a] / r3;
          jet.hess_diag[a] += s.alpha1 * (1.0 / r3 - 3.0 * q[a] * q[a] / r5);
        }
      }
      add_inverse_square(jet, 0, s.beta, p.x);
      add_inverse_square(jet, 1, s.gamma, p.y);
      break;
    }
    case SpaceKind::KIV:
    case SpaceKind::KV: {
      const double c = s.units.hbar * s.units.hbar / (2.0 * s.units.mass);
      add_centrifugal(jet, c * s.alpha, p.x, p.y);
      add_inverse_square(jet, 1, c * s.beta, p.y);
      if (s.kind == SpaceKind::KIV) {
        add_inverse_square(jet, 2, c * s.gamma, p.z);
      } else {
        jet.f += s.gamma * p.z;
        jet.grad[2] += s.gamma;
      }
      break;
    }
  }
  return jet;
}

void check_positive(const SpaceSpec& spec, double f) {
  if (!(f > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << to_string(spec.kind) << ": metric factor is not positive (f = " << f << ")";
    throw NonPositiveMetricError(msg.str(), f);
  }
}

double hbar2_over_8m(const SpaceSpec& spec) {
  return spec.units.hbar * spec.units.hbar / (8.0 * spec.units.mass);
}

}  // namespace

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::KI: return "KI";
    case SpaceKind::KII: return "KII";
    case SpaceKind::KIII: return "KIII";
    case SpaceKind::KIV: return "KIV";
    case SpaceKind::KV: return "KV";
  }
  return "?";
}

SpaceKind parse_space_kind(std::string_view text) {
  for (auto k : {SpaceKind::KI, SpaceKind::KII, SpaceKind::KIII, SpaceKind::KIV, SpaceKind::KV}) {
    if (text == to_string(k)) return k;
  }
  throw ParameterError("unknown space kind '" + std::string(text) + "' (expected KI, KII, KIII, KIV or KV)");
}

std::span<const SpaceField> metric_fields(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::KI: return kMetricKI;
    case SpaceKind::KII: return kMetricKII;
    case SpaceKind::KIII: return kMetricKIII;
    case SpaceKind::KIV:
    case SpaceKind::KV: return kMetricKIV;
  }
  return {};
}

std::span<const SpaceField> potential_fields(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::KI: return kPotKI;
    case SpaceKind::KII: return kPotKII;
    case SpaceKind::KIII: return kPotKIII;
    case SpaceKind::KIV:
    case SpaceKind::KV: return kPotKIV;
  }
  return {};
}

bool is_flat_limit(const SpaceSpec& spec) {
  for (const auto& field : metric_fields(spec.kind)) {
    if (field.name != "delta" && spec.*field.member != 0.0) return false;
  }
  return true;
}

void validate(const SpaceSpec& spec) {
  auto belongs = [&](std::string_view name) {
    for (auto fields : {metric_fields(spec.kind), potential_fields(spec.kind)}) {
      for (const auto& f : fields)
        if (f.name == name) return true;
    }
    return false;
  };
  for (const auto& field : kAllFields) {
    const double v = spec.*field.member;
    if (!std::isfinite(v)) throw ParameterError("constant '" + std::string(field.name) + "' is not finite");
    if (v != 0.0 && !belongs(field.name)) {
      throw ParameterError("constant '" + std::string(field.name) + "' does not belong to space " +
                           std::string(to_string(spec.kind)));
    }
  }
  if (!(spec.units.hbar > 0.0) || !(spec.units.mass > 0.0)) {
    throw ParameterError("units: hbar and mass must be strictly positive");
  }
}

double metric_factor(const SpaceSpec& spec, const Point3& p) {
  check_singular(spec, p);
  const double f = metric_value<double>(spec, p.x, p.y, p.z);
  check_positive(spec, f);
  return f;
}

MetricJet metric_jet(const SpaceSpec& spec, const Point3& p) {
  check_singular(spec, p);
  MetricJet jet = raw_jet(spec, p);
  check_positive(spec, jet.f);
  return jet;
}

double h_decomposition(const SpaceSpec& spec, const Point3& p, Axis axis) {
  const double f = metric_factor(spec, p);
  const double q[3] = {p.x, p.y, p.z};
  return std::sqrt(f) * std::abs(q[static_cast<int>(axis)]);
}

double delta_v_total(const SpaceSpec& spec, const Point3& p, DerivMode mode, int dimension) {
  check_singular(spec, p);
  using L = long double;
  L f;
  std::array<L, 3> fa{};
  std::array<L, 3> faa{};
  if (mode == DerivMode::analytic) {
    const MetricJet jet = raw_jet(spec, p);
    f = jet.f;
    for (int a = 0; a < 3; ++a) {
      fa[a] = jet.grad[a];
      faa[a] = jet.hess_diag[a];
    }
  } else {
    const L q[3] = {p.x, p.y, p.z};
    f = metric_value<L>(spec, q[0], q[1], q[2]);
    for (int a = 0; a < 3; ++a) {
      const L h = L(1e-5) * (L(1) + std::abs(q[a]));
      L plus[3] = {q[0], q[1], q[2]};
      L minus[3] = {q[0], q[1], q[2]};
      plus[a] += h;
      minus[a] -= h;
      const L fp = metric_value<L>(spec, plus[0], plus[1], plus[2]);
      const L fm = metric_value<L>(spec, minus[0], minus[1], minus[2]);
      fa[a] = (fp - fm) / (L(2) * h);
      faa[a] = (fp - L(2) * f + fm) / (h * h);
    }
  }
  if (std::abs(f) < L(1e-12)) {
    throw SingularPointError(std::string(to_string(spec.kind)) + ": |f| < 1e-12, quantum potential undefined");
  }
  check_positive(spec, static_cast<double>(f));
  const L s = std::sqrt(f);
  const L d = dimension;
  L sum = 0;
  for (int a = 0; a < 3; ++a) {
    const L sa = fa[a] / (L(2) * s);
    const L saa = faa[a] / (L(2) * s) - fa[a] * fa[a] / (L(4) * s * f);
    sum += ((d - L(4)) * sa * sa + L(2) * s * saa) / (f * f);
  }
  return static_cast<double>(L(hbar2_over_8m(spec)) * (d - L(2)) * sum);
}

DeltaVSplit delta_v_split(const SpaceSpec& spec, const Point3& p) {
  const double q[3] = {p.x, p.y, p.z};
  for (int a = 0; a < 3; ++a) {
    if (near_axis(q[a])) {
      throw SingularPointError("delta_v_split: every coordinate must be non-zero");
    }
  }
  const MetricJet jet = metric_jet(spec, p);
  const double k = hbar2_over_8m(spec);
  DeltaVSplit out;
  double inv_h2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double x = q[a];
    // H = h^2 = f x^2 keeps the per-axis formula free of the sign of x.
    const double h2 = jet.f * x * x;
    const double dh2 = jet.grad[a] * x * x + 2.0 * x * jet.f;
    const double ddh2 = jet.hess_diag[a] * x * x + 4.0 * x * jet.grad[a] + 2.0 * jet.f;
    out.dv1 += k * (x * x * ddh2 - 0.75 * x * x * dh2 * dh2 / h2 - x * dh2) / (h2 * h2);
    inv_h2 += 1.0 / h2;
  }
  out.dv2 = 3.0 * k * inv_h2;
  return out;
}

std::array<double, 3> grad_log_sqrt_g(const SpaceSpec& spec, const Point3& p) {
  const MetricJet jet = metric_jet(spec, p);
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) out[a] = 1.5 * jet.grad[a] / jet.f;
  return out;
}

}  // namespace koenigs
