#include "koenigs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "koenigs/errors.hpp"

namespace koenigs::oracle {
namespace {

struct Tridiagonal {
  std::vector<double> diag;
  double off = 0.0;
  double x0 = 0.0;
  double h = 0.0;
};

double centrifugal(const RadialPotential& pot, const UnitScalars& u) {
  return u.hbar * u.hbar * (pot.lambda * pot.lambda - 0.25) / (2.0 * u.mass);
}

double potential_at(const RadialPotential& pot, double r, const UnitScalars& u) {
  switch (pot.kind) {
    case PotentialKind::oscillator:
      return 0.5 * u.mass * pot.omega_eff * pot.omega_eff * r * r + centrifugal(pot, u) / (r * r);
    case PotentialKind::coulomb:
      return -pot.alpha_eff / r + centrifugal(pot, u) / (r * r);
    case PotentialKind::line_oscillator:
      return 0.5 * u.mass * pot.omega_eff * pot.omega_eff * r * r;
  }
  return 0.0;
}

Tridiagonal discretise(const RadialPotential& pot, const FdGrid& g, const UnitScalars& u) {
  Tridiagonal t;
  t.h = (g.r_max - g.r_min) / (g.n_points + 1);
  t.x0 = g.r_min + t.h;
  const double kin = u.hbar * u.hbar / (u.mass * t.h * t.h);
  t.off = -0.5 * kin;
  t.diag.resize(g.n_points);
  for (int i = 0; i < g.n_points; ++i) t.diag[i] = kin + potential_at(pot, t.x0 + i * t.h, u);
  return t;
}

// Number of eigenvalues strictly below x (Sturm sequence of the LDL^T pivots).
int count_below(const Tridiagonal& t, double x) {
  const double e2 = t.off * t.off;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(t.diag[i]) + std::abs(x) + 1e-300);
    if (q < 0.0) ++count;
  }
  return count;
}

double kth_eigenvalue(const Tridiagonal& t, int k) {
  double lo = *std::min_element(t.diag.begin(), t.diag.end()) - 2.0 * std::abs(t.off);
  double step = std::max(1.0, std::abs(lo)) * 1e-3 + std::abs(t.off) * 1e-6;
  double hi = lo + step;
  while (count_below(t, hi) <= k) {
    lo = hi;
    step *= 2.0;
    hi += step;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(t, mid) <= k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Eigenvector for eigenvalue lambda by inverse iteration (Thomas algorithm).
std::vector<double> eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t n = t.diag.size();
  const double shift = lambda + 1e-10 * (std::abs(lambda) + std::abs(t.off));
  std::vector<double> x(n, 1.0);
  std::vector<double> c(n);
  std::vector<double> d(n);
  for (int iter = 0; iter < 3; ++iter) {
    double denom = t.diag[0] - shift;
    c[0] = t.off / denom;
    d[0] = x[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = t.diag[i] - shift - t.off * c[i - 1];
      if (denom == 0.0) denom = 1e-300;
      c[i] = t.off / denom;
      d[i] = (x[i] - t.off * d[i - 1]) / denom;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::abs(v));
    for (double& v : x) v /= norm;
  }
  return x;
}

double length_scale(const RadialPotential& pot, const UnitScalars& u) {
  if (pot.kind == PotentialKind::coulomb) return u.hbar * u.hbar / (u.mass * pot.alpha_eff);
  return std::sqrt(u.hbar / (u.mass * pot.omega_eff));
}

}  // namespace

void validate(const FdGrid& grid, PotentialKind kind) {
  if (grid.n_points < 200) throw ParameterError("FdGrid: n_points must be at least 200");
  if (!(grid.r_max > grid.r_min)) throw ParameterError("FdGrid: r_max must exceed r_min");
  if (kind != PotentialKind::line_oscillator && !(grid.r_min > 0.0)) {
    throw ParameterError("FdGrid: r_min must be positive for half-line problems");
  }
}

std::vector<double> fd_radial_eigen(const RadialPotential& pot, const FdGrid& grid, int k_lowest,
                                    const UnitScalars& units) {
  validate(grid, pot.kind);
  if (k_lowest < 1 || k_lowest > grid.n_points) throw ParameterError("fd_radial_eigen: invalid k_lowest");
  if (pot.kind != PotentialKind::coulomb && !(pot.omega_eff > 0.0)) {
    throw ParameterError("fd_radial_eigen: oscillator frequency must be positive");
  }
  if (pot.kind != PotentialKind::line_oscillator && !(pot.lambda > -1.0)) {
    throw ParameterError("fd_radial_eigen: lambda must exceed -1");
  }
  const Tridiagonal t = discretise(pot, grid, units);
  std::vector<double> out(k_lowest);
  for (int k = 0; k < k_lowest; ++k) out[k] = kth_eigenvalue(t, k);
  return out;
}

double tail_ratio(const RadialPotential& pot, const FdGrid& grid, int n, const UnitScalars& units) {
  const Tridiagonal t = discretise(pot, grid, units);
  const auto x = eigenvector(t, kth_eigenvalue(t, n));
  const std::size_t m = x.size();
  const std::size_t edge = std::max<std::size_t>(1, m / 20);
  double peak = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    peak = std::max(peak, std::abs(x[i]));
    const bool in_tail = i >= m - edge || (pot.kind == PotentialKind::line_oscillator && i < edge);
    if (in_tail) tail = std::max(tail, std::abs(x[i]));
  }
  return tail / peak;
}

FdGrid auto_grid(const RadialPotential& pot, int n, int n_points, const UnitScalars& u) {
  if (pot.kind == PotentialKind::coulomb && !(pot.alpha_eff > 0.0)) {
    throw ParameterError("auto_grid: the Coulomb coupling must be positive for bound states");
  }
  if (pot.kind != PotentialKind::coulomb && !(pot.omega_eff > 0.0)) {
    throw ParameterError("auto_grid: oscillator frequency must be positive");
  }
  const double l = length_scale(pot, u);
  const double c = centrifugal(pot, u);
  // The Dirichlet wall at r_min shifts a level by about (r_min / l)^{2 lambda};
  // keep that below 1e-10. A smaller r_min costs nothing on a uniform grid.
  const double wall = l * std::clamp(std::pow(1e-10, 1.0 / (2.0 * std::max(pot.lambda, 1e-3))), 1e-12, 1e-4);
  FdGrid g;
  g.n_points = n_points;
  double r_turn = 0.0;
  switch (pot.kind) {
    case PotentialKind::oscillator: {
      const double eps = u.hbar * pot.omega_eff * (2.0 * n + pot.lambda + 1.0);
      const double mw2 = u.mass * pot.omega_eff * pot.omega_eff;
      const double disc = eps * eps - 2.0 * mw2 * c;
      r_turn = std::sqrt((eps + std::sqrt(std::max(disc, 0.0))) / mw2);
      g.r_min = wall;
      break;
    }
    case PotentialKind::coulomb: {
      const double nu = n + pot.lambda + 0.5;
      const double eps = -pot.alpha_eff / (2.0 * l * nu * nu);
      const double disc = pot.alpha_eff * pot.alpha_eff + 4.0 * eps * c;
      r_turn = (-pot.alpha_eff - std::sqrt(std::max(disc, 0.0))) / (2.0 * eps);
      g.r_min = wall;
      break;
    }
    case PotentialKind::line_oscillator:
      r_turn = l * std::sqrt(2.0 * n + 1.0);
      break;
  }
  double r_max = 2.0 * r_turn;
  for (int attempt = 0; attempt < 40; ++attempt) {
    g.r_max = r_max;
    if (pot.kind == PotentialKind::line_oscillator) g.r_min = -r_max;
    if (tail_ratio(pot, g, n, u) < 1e-8) return g;
    r_max *= 1.25;
  }
  throw AccuracyError("auto_grid: eigenvector tail did not decay below 1e-8");
}

namespace {

struct SubProblem {
  RadialPotential pot;
  int n = 0;
};

// Separated one-dimensional problems selected by the labels at energy E; the
// principal problem comes first. Empty when no bound state can exist at E.
std::vector<SubProblem> sub_problems(const SpaceSpec& spec, const QuantumNumbers& qn, double e) {
  const EffectiveIndices ix = effective_indices(spec, qn, e);
  if (!ix.all_real()) return {};
  const auto& n = qn.labels;
  const double w = ix.omega_eff.value;
  auto osc = [&](double lambda, int deg) {
    return SubProblem{{PotentialKind::oscillator, lambda, w, 0.0}, deg};
  };
  auto line = [&](int deg) { return SubProblem{{PotentialKind::line_oscillator, 0.0, w, 0.0}, deg}; };
  if (spec.kind == SpaceKind::KIII) {
    if (!(ix.alpha_eff > 0.0)) return {};
    return {SubProblem{{PotentialKind::coulomb, ix.lambda2, 0.0, ix.alpha_eff}, n[0]}};
  }
  if (!(w > 0.0)) return {};
  const double kx = ix.k_eff[0].value;
  const double ky = ix.k_eff[1].value;
  const double kz = ix.k_eff[2].value;
  if (spec.kind == SpaceKind::KI) {
    switch (qn.scheme) {
      case QnScheme::polar: return {osc(ix.lambda2, n[0])};
      case QnScheme::cartesian: return {osc(kz, n[2]), osc(kx, n[0]), osc(ky, n[1])};
      case QnScheme::cylindrical: return {osc(ix.lambda1, n[0]), osc(kz, n[1])};
      default: break;
    }
  } else if (spec.kind == SpaceKind::KII) {
    switch (qn.scheme) {
      case QnScheme::cartesian: return {line(n[2]), osc(kx, n[0]), osc(ky, n[1])};
      case QnScheme::cylindrical: return {osc(ix.lambda1, n[0]), line(n[1])};
      default: break;
    }
  }
  throw KindError("oracle: label scheme '" + std::string(to_string(qn.scheme)) + "' is not separable for " +
                  std::string(to_string(spec.kind)));
}

// F(E) = delta E - sum of eigenvalues. `fixed` pins the grids during bisection.
double balance(const SpaceSpec& spec, const QuantumNumbers& qn, double e, int n_points,
               std::vector<FdGrid>* fixed) {
  const auto probs = sub_problems(spec, qn, e);
  if (probs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double eps = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const auto& p = probs[i];
    if (p.pot.kind != PotentialKind::line_oscillator && !(p.pot.lambda > -1.0)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    FdGrid g;
    if (fixed != nullptr && fixed->size() == probs.size()) {
      g = (*fixed)[i];
    } else {
      g = auto_grid(p.pot, p.n, n_points, spec.units);
      if (fixed != nullptr) fixed->push_back(g);
    }
    eps += fd_radial_eigen(p.pot, g, p.n + 1, spec.units)[p.n];
  }
  return spec.delta * e - eps;
}

void append_log_samples(double p, double q, double per_decade, std::vector<double>& out) {
  const double width = q - p;
  if (!(width > 0.0)) return;
  const double d_max = 0.5 * width;
  const double d_min = width * 1e-10;
  const double decades = std::log10(d_max / d_min);
  const int count = std::max(4, static_cast<int>(std::ceil(decades * per_decade)));
  for (int i = 0; i <= count; ++i) {
    const double d = d_min * std::pow(10.0, decades * i / count);
    out.push_back(p + d);
    out.push_back(q - d);
  }
}

}  // namespace

OracleResult self_consistent_level(const SpaceSpec& spec, const QuantumNumbers& qn, const OracleConfig& cfg) {
  validate(spec);
  if (spectrum_type(spec) == SpectrumType::continuous_only) {
    throw KindError(std::string(to_string(spec.kind)) + ": only a continuous spectrum exists");
  }
  OracleResult out;
  if (spec.delta == 0.0) {
    out.message = "delta = 0: the energy drops out of the balance condition";
    return out;
  }
  const auto windows = validity_windows(spec, qn);
  for (std::size_t wid = 0; wid < windows.size(); ++wid) {
    const double lo = std::max(windows[wid].lower, -cfg.e_max_abs);
    const double hi = std::min(windows[wid].upper, cfg.e_max_abs);
    if (!(lo < hi)) continue;
    std::vector<double> breaks = {lo, hi};
    if (lo < 0.0 && hi > 0.0) breaks.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> samples;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      append_log_samples(breaks[i], breaks[i + 1], cfg.coarse_per_decade, samples);
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
    std::erase_if(samples, [&](double e) { return !(e > lo && e < hi) || e == 0.0; });

    std::vector<double> values(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      values[i] = balance(spec, qn, samples[i], cfg.coarse_points, nullptr);
    }
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      if (std::isnan(values[i]) || std::isnan(values[i + 1])) continue;
      if (std::signbit(values[i]) == std::signbit(values[i + 1])) continue;
      double a = samples[i];
      double b = samples[i + 1];
      std::vector<FdGrid> grids;
      balance(spec, qn, 0.5 * (a + b), cfg.n_points, &grids);
      double fa = balance(spec, qn, a, cfg.n_points, &grids);
      double fb = balance(spec, qn, b, cfg.n_points, &grids);
      // The fine root can sit just outside the coarse bracket.
      for (int grow = 0; grow < 30 && !(std::signbit(fa) != std::signbit(fb)); ++grow) {
        const double w = b - a;
        a = std::max(a - w, std::nextafter(lo, hi));
        b = std::min(b + w, std::nextafter(hi, lo));
        fa = balance(spec, qn, a, cfg.n_points, &grids);
        fb = balance(spec, qn, b, cfg.n_points, &grids);
        if (std::isnan(fa) || std::isnan(fb)) break;
      }
      if (std::isnan(fa) || std::isnan(fb) || std::signbit(fa) == std::signbit(fb)) continue;
      while (true) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b || b - a <= cfg.tol_rel * std::abs(mid)) break;
        const double fm = balance(spec, qn, mid, cfg.n_points, &grids);
        if (std::isnan(fm)) break;
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      EnergyLevel lv;
      lv.energy = 0.5 * (a + b);
      lv.residual = balance(spec, qn, lv.energy, cfg.n_points, &grids);
      lv.qn = qn;
      lv.n_aggregate = aggregate_n(spec.kind, qn);
      lv.window_id = static_cast<int>(wid);
      lv.provenance = Provenance::oracle;
      const bool duplicate = !out.levels.empty() &&
                             std::abs(out.levels.back().energy - lv.energy) <= 1e-9 * std::abs(lv.energy);
      if (!duplicate) {
        out.levels.push_back(lv);
        out.grids.push_back(grids.front());
      }
    }
  }
  out.found = !out.levels.empty();
  if (!out.found) out.message = "no bracket of delta E - eps(E) inside the validity window";
  return out;
}

CompareReport compare(const std::vector<EnergyLevel>& a, const std::vector<EnergyLevel>& b, double rel_tol) {
  CompareReport rep;
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = b.size();
    double best_dev = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double scale = std::max(std::abs(a[i].energy), std::abs(b[j].energy));
      const double dev = scale > 0.0 ? std::abs(a[i].energy - b[j].energy) / scale : 0.0;
      if (dev < best_dev) {
        best_dev = dev;
        best = j;
      }
    }
    if (best < b.size() && best_dev <= rel_tol) {
      used[best] = true;
      rep.matched.push_back({i, best, a[i].energy, b[best].energy, best_dev});
      rep.max_deviation = std::max(rep.max_deviation, best_dev);
    } else {
      rep.unmatched_a.push_back(i);
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used[j]) rep.unmatched_b.push_back(j);
  }
  return rep;
}

}  // namespace koenigs::oracle
