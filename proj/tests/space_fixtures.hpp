#pragma once

// Generic Koenigs metrics with f > 0 everywhere off the singular planes, and
// reference evaluations of f, Delta V and Gamma that rebuild everything from
// the metric formulas with their own finite differences.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "koenigs/spaces.hpp"

namespace fixtures {

using koenigs::Point3;
using koenigs::SpaceKind;
using koenigs::SpaceSpec;

inline std::vector<SpaceSpec> generic_specs() {
  std::vector<SpaceSpec> out;
  SpaceSpec s1;
  s1.kind = SpaceKind::KI;
  s1.alpha = 0.7, s1.beta_x = 0.3, s1.beta_y = 0.2, s1.beta_z = 0.45, s1.delta = 1.2;
  s1.omega = 1.0, s1.k_x = 0.5;
  out.push_back(s1);

  SpaceSpec s2;
  s2.kind = SpaceKind::KII;
  s2.alpha = 0.4, s2.beta_x = 0.25, s2.beta_y = 0.6, s2.delta = 0.9;
  s2.omega = 1.0;
  out.push_back(s2);

  SpaceSpec s3;
  s3.kind = SpaceKind::KIII;
  s3.alpha1 = -0.5, s3.beta = 0.3, s3.gamma = 0.2, s3.delta = 1.0;
  s3.alpha2 = 1.0;
  out.push_back(s3);

  SpaceSpec s4;
  s4.kind = SpaceKind::KIV;
  s4.alpha = 0.8, s4.beta = 1.1, s4.gamma = 0.35, s4.delta = 1.0;
  s4.k1 = 0.5, s4.k2 = 0.5, s4.k3 = 0.5;
  out.push_back(s4);

  SpaceSpec s5;
  s5.kind = SpaceKind::KV;
  s5.alpha = -0.6, s5.beta = 0.9, s5.gamma = 0.3, s5.delta = 1.0;
  s5.k1 = 0.5, s5.k2 = 0.5, s5.k3 = 0.5;
  out.push_back(s5);
  return out;
}

// Coordinates with 0.2 <= |x_a| <= 2, random signs.
inline Point3 random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  std::bernoulli_distribution flip(0.5);
  auto c = [&] { return flip(rng) ? -mag(rng) : mag(rng); };
  Point3 p;
  p.x = c();
  p.y = c();
  p.z = c();
  return p;
}

template <class T>
T f_direct_t(const SpaceSpec& s, T x, T y, T z) {
  const T pref = T(s.units.hbar) * T(s.units.hbar) / (T(2) * T(s.units.mass));
  switch (s.kind) {
    case SpaceKind::KI:
      return T(s.alpha) * (x * x + y * y + z * z) + T(s.beta_x) / (x * x) + T(s.beta_y) / (y * y) +
             T(s.beta_z) / (z * z) + T(s.delta);
    case SpaceKind::KII:
      return T(s.alpha) * (x * x + y * y + T(4) * z * z) + T(s.beta_x) / (x * x) + T(s.beta_y) / (y * y) + T(s.delta);
    case SpaceKind::KIII:
      return -T(s.alpha1) / std::sqrt(x * x + y * y + z * z) + T(s.beta) / (x * x) + T(s.gamma) / (y * y) + T(s.delta);
    case SpaceKind::KIV:
      return pref * (T(s.alpha) * x / (y * y * std::sqrt(x * x + y * y)) + T(s.beta) / (y * y) + T(s.gamma) / (z * z)) +
             T(s.delta);
    case SpaceKind::KV:
      return pref * (T(s.alpha) * x / (y * y * std::sqrt(x * x + y * y)) + T(s.beta) / (y * y)) + T(s.gamma) * z +
             T(s.delta);
  }
  return T(0);
}

inline double f_direct(const SpaceSpec& s, const Point3& p) { return f_direct_t<double>(s, p.x, p.y, p.z); }

// First and second partials of sqrt(f) along axis a by five-point stencils in
// extended precision.
inline std::array<long double, 3> sqrt_f_jet(const SpaceSpec& s, const Point3& p, int a) {
  using L = long double;
  const L q[3] = {p.x, p.y, p.z};
  const L h = 1e-3L * (1 + std::fabs(q[a]));
  auto g = [&](L shift) {
    L r[3] = {q[0], q[1], q[2]};
    r[a] += shift;
    return std::sqrt(f_direct_t<L>(s, r[0], r[1], r[2]));
  };
  const L g0 = g(0), gp1 = g(h), gm1 = g(-h), gp2 = g(2 * h), gm2 = g(-2 * h);
  const L d1 = (gm2 - 8 * gm1 + 8 * gp1 - gp2) / (12 * h);
  const L d2 = (-gm2 + 16 * gm1 - 30 * g0 + 16 * gp1 - gp2) / (12 * h * h);
  return {g0, d1, d2};
}

inline double delta_v_reference(const SpaceSpec& s, const Point3& p) {
  using L = long double;
  const L k = L(s.units.hbar) * L(s.units.hbar) / (8 * L(s.units.mass));
  L sum = 0;
  for (int a = 0; a < 3; ++a) {
    const auto j = sqrt_f_jet(s, p, a);
    const L s4 = j[0] * j[0] * j[0] * j[0];
    sum += (-j[1] * j[1] + 2 * j[0] * j[2]) / s4;  // D = 3
  }
  return static_cast<double>(k * sum);
}

inline std::array<double, 3> grad_log_sqrt_g_reference(const SpaceSpec& s, const Point3& p) {
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const auto j = sqrt_f_jet(s, p, a);
    out[a] = static_cast<double>(3 * j[1] / j[0]);  // (3/2) d ln f = 3 d ln sqrt f
  }
  return out;
}

}  // namespace fixtures
