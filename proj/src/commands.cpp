#include "koenigs/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "koenigs/catalog.hpp"
#include "koenigs/errors.hpp"
#include "koenigs/oracle.hpp"

namespace koenigs::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, n) on a small worker pool. Results are stored by
// index, so output order does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string labels_text(const QuantumNumbers& qn) {
  std::ostringstream s;
  s << qn.labels[0] << ';' << qn.labels[1] << ';' << qn.labels[2];
  return s.str();
}

std::string signs_text(const std::array<int, 3>& signs) {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (i) s += ';';
    s += signs[i] > 0 ? '+' : '-';
  }
  return s;
}

Json qn_json(const QuantumNumbers& qn) {
  return {{"scheme", std::string(to_string(qn.scheme))},
          {"labels", qn.labels},
          {"branch_signs", signs_text(qn.branch_signs)}};
}

Json units_json(const UnitScalars& u) { return {{"hbar", u.hbar}, {"mass", u.mass}}; }

// A JSON number, or null for non-finite values (JSON has no NaN).
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

bool continuous_only(const RunConfig& cfg, std::ostream& err) {
  if (spectrum_type(cfg.space) != SpectrumType::continuous_only) return false;
  err << to_string(cfg.space.kind) << ": " << to_string(SpectrumType::continuous_only)
      << ": the quantization condition has no discrete solutions for this space; only a continuous spectrum exists\n";
  return true;
}

std::vector<QuantumNumbers> requested(const RunConfig& cfg) {
  std::vector<QuantumNumbers> out;
  for (const auto& qn : expand(cfg.quantum_numbers, cfg.space.kind)) out.push_back(with_branch_overrides(qn, cfg.solver));
  return out;
}

}  // namespace

std::string header_line(const std::string& command, const UnitScalars& units) {
  return "# koenigs " + std::string(kVersion) + " " + command + " units hbar=" + format_double(units.hbar) +
         " mass=" + format_double(units.mass);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (continuous_only(cfg, err)) return kContinuousOnly;
  const auto qns = requested(cfg);
  std::vector<SolveResult> results(qns.size());
  std::vector<std::string> failures(qns.size());
  parallel_for(qns.size(), [&](std::size_t i) {
    try {
      results[i] = solve_levels(cfg.space, qns[i], cfg.solver);
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (const auto& f : failures) {
    if (!f.empty()) {
      err << "error: " << f << '\n';
      return kConfigError;
    }
  }

  std::size_t total = 0;
  for (const auto& r : results) total += r.levels.size();

  if (cfg.output.format == "json") {
    Json doc;
    doc["header"] = header_line("solve", cfg.space.units).substr(2);
    doc["units"] = units_json(cfg.space.units);
    doc["space"] = to_json(cfg.space);
    Json rows = Json::array();
    Json diags = Json::array();
    for (std::size_t i = 0; i < qns.size(); ++i) {
      for (const auto& lv : results[i].levels) {
        rows.push_back({{"kind", std::string(to_string(cfg.space.kind))},
                        {"N", lv.n_aggregate},
                        {"quantum_numbers", qn_json(lv.qn)},
                        {"energy", num(lv.energy)},
                        {"residual", num(lv.residual)},
                        {"window_id", lv.window_id},
                        {"provenance", std::string(to_string(lv.provenance))}});
      }
      for (const auto& d : results[i].diagnostics) diags.push_back(d);
    }
    doc["levels"] = rows;
    doc["diagnostics"] = diags;
    out << doc.dump(2) << '\n';
  } else {
    out << header_line("solve", cfg.space.units) << '\n';
    out << "kind,N,n_labels,branch_signs,energy,residual,window_id,provenance\n";
    for (const auto& r : results) {
      for (const auto& lv : r.levels) {
        out << to_string(cfg.space.kind) << ',' << lv.n_aggregate << ',' << labels_text(lv.qn) << ','
            << signs_text(lv.qn.branch_signs) << ',' << format_double(lv.energy) << ','
            << format_double(lv.residual) << ',' << lv.window_id << ',' << to_string(lv.provenance) << '\n';
      }
    }
  }

  for (std::size_t i = 0; i < qns.size(); ++i) {
    for (const auto& d : results[i].diagnostics) err << "N=" << aggregate_n(cfg.space.kind, qns[i]) << ": " << d << '\n';
  }
  if (total == 0) {
    err << "empty spectrum: no bound-state energy satisfies the quantization condition for the requested labels\n";
    return kEmpty;
  }
  return kOk;
}

int cmd_special_cases(const RunConfig& cfg, const std::string& case_id, std::ostream& out, std::ostream& err) {
  if (continuous_only(cfg, err)) return kContinuousOnly;
  const auto ids = special_case_ids(cfg.space.kind);
  if (std::find(ids.begin(), ids.end(), case_id) == ids.end()) {
    err << "unknown case '" << case_id << "' for " << to_string(cfg.space.kind) << "; available:";
    for (const auto& id : ids) err << ' ' << id;
    err << '\n';
    return kConfigError;
  }

  struct Row {
    int n = 0;
    QuantumNumbers qn;
    double closed = kNaN;
    double solved = kNaN;
    std::string note = "ok";
  };
  const auto qns = requested(cfg);
  std::vector<Row> rows(qns.size());
  std::vector<std::string> fatal(qns.size());
  parallel_for(qns.size(), [&](std::size_t i) {
    Row& row = rows[i];
    row.qn = qns[i];
    try {
      row.n = aggregate_n(cfg.space.kind, qns[i]);
      row.closed = closed_form_special(cfg.space, case_id, qns[i]).energy;
    } catch (const BranchError&) {
      row.note = "branch_error";
    } catch (const std::exception& e) {
      fatal[i] = e.what();
      return;
    }
    SolveResult solved;
    try {
      solved = solve_levels(cfg.space, qns[i], cfg.solver);
    } catch (const std::exception& e) {
      fatal[i] = e.what();
      return;
    }
    if (solved.levels.empty()) {
      if (row.note == "ok") row.note = "no_solver_root";
      return;
    }
    // The closed form picks one root; compare against the nearest solver root.
    const double target = std::isfinite(row.closed) ? row.closed : solved.levels.front().energy;
    double best = solved.levels.front().energy;
    for (const auto& lv : solved.levels) {
      if (std::abs(lv.energy - target) < std::abs(best - target)) best = lv.energy;
    }
    row.solved = best;
  });
  for (const auto& f : fatal) {
    if (!f.empty()) {
      err << "error: " << f << '\n';
      return kConfigError;
    }
  }

  auto deviation = [](const Row& r) {
    return std::abs(r.closed - r.solved) / std::max(std::abs(r.closed), std::abs(r.solved));
  };
  if (cfg.output.format == "json") {
    Json doc;
    doc["header"] = header_line("special-cases", cfg.space.units).substr(2);
    doc["units"] = units_json(cfg.space.units);
    doc["case_id"] = case_id;
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"N", r.n},
                     {"quantum_numbers", qn_json(r.qn)},
                     {"closed_form", num(r.closed)},
                     {"solver", num(r.solved)},
                     {"rel_deviation", num(deviation(r))},
                     {"note", r.note}});
    }
    doc["rows"] = arr;
    out << doc.dump(2) << '\n';
  } else {
    out << header_line("special-cases", cfg.space.units) << '\n';
    out << "case_id,N,labels,closed_form,solver,rel_deviation,note\n";
    for (const auto& r : rows) {
      out << case_id << ',' << r.n << ',' << labels_text(r.qn) << ',' << format_double(r.closed) << ','
          << format_double(r.solved) << ',' << format_double(deviation(r)) << ',' << r.note << '\n';
    }
  }
  for (const auto& r : rows) {
    if (r.note == "branch_error") err << "N=" << r.n << ": the closed form has no admissible root on this branch\n";
  }
  return kOk;
}

std::vector<Point3> read_points(std::istream& in) {
  std::vector<Point3> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream s(line);
    Point3 p;
    std::string extra;
    if (!(s >> p.x >> p.y >> p.z) || (s >> extra)) {
      throw ConfigError("points file line " + std::to_string(line_no) + ": expected three numbers");
    }
    pts.push_back(p);
  }
  return pts;
}

int cmd_deltav(const RunConfig& cfg, const std::vector<Point3>& points, std::ostream& out, std::ostream& err) {
  struct Row {
    double f = kNaN, dv1 = kNaN, dv2 = kNaN, an = kNaN, nu = kNaN;
    std::string status = "ok";
  };
  std::vector<Row> rows(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point3& p = points[i];
    Row& r = rows[i];
    try {
      r.f = metric_factor(cfg.space, p);
      r.an = delta_v_total(cfg.space, p, DerivMode::analytic);
      r.nu = delta_v_total(cfg.space, p, DerivMode::numeric);
    } catch (const SingularPointError& e) {
      r.status = "singular";
      err << "point " << i << ": " << e.what() << '\n';
      continue;
    } catch (const NonPositiveMetricError& e) {
      r.status = "nonpositive_metric";
      err << "point " << i << ": " << e.what() << '\n';
      continue;
    }
    if (p.x == 0.0 || p.y == 0.0 || p.z == 0.0) {
      r.status = "split_undefined";
      continue;
    }
    const DeltaVSplit split = delta_v_split(cfg.space, p);
    r.dv1 = split.dv1;
    r.dv2 = split.dv2;
  }

  if (cfg.output.format == "json") {
    Json doc;
    doc["header"] = header_line("deltav", cfg.space.units).substr(2);
    doc["units"] = units_json(cfg.space.units);
    Json arr = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      arr.push_back({{"x", points[i].x}, {"y", points[i].y}, {"z", points[i].z}, {"f", num(r.f)},
                     {"dv1", num(r.dv1)}, {"dv2", num(r.dv2)}, {"dv_total_analytic", num(r.an)},
                     {"dv_total_numeric", num(r.nu)}, {"status", r.status}});
    }
    doc["rows"] = arr;
    out << doc.dump(2) << '\n';
  } else {
    out << header_line("deltav", cfg.space.units) << '\n';
    out << "x,y,z,f,dv1,dv2,dv_total_analytic,dv_total_numeric,status\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << format_double(points[i].x) << ',' << format_double(points[i].y) << ',' << format_double(points[i].z)
          << ',' << format_double(r.f) << ',' << format_double(r.dv1) << ',' << format_double(r.dv2) << ','
          << format_double(r.an) << ',' << format_double(r.nu) << ',' << r.status << '\n';
    }
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (continuous_only(cfg, err)) return kContinuousOnly;
  const auto qns = requested(cfg);
  oracle::OracleConfig ocfg;
  ocfg.n_points = cfg.verify.n_points;
  ocfg.e_max_abs = cfg.solver.e_max_abs;

  struct Item {
    SolveResult solved;
    oracle::OracleResult checked;
    oracle::CompareReport report;
    std::string error;
  };
  std::vector<Item> items(qns.size());
  parallel_for(qns.size(), [&](std::size_t i) {
    try {
      items[i].solved = solve_levels(cfg.space, qns[i], cfg.solver);
      items[i].checked = oracle::self_consistent_level(cfg.space, qns[i], ocfg);
      items[i].report = oracle::compare(items[i].solved.levels, items[i].checked.levels, cfg.verify.rel_tol);
    } catch (const std::exception& e) {
      items[i].error = e.what();
    }
  });
  for (const auto& it : items) {
    if (!it.error.empty()) {
      err << "error: " << it.error << '\n';
      return kConfigError;
    }
  }

  bool ok = true;
  double max_dev = 0.0;
  Json doc;
  doc["header"] = header_line("verify", cfg.space.units).substr(2);
  doc["units"] = units_json(cfg.space.units);
  doc["space"] = to_json(cfg.space);
  doc["rel_tol"] = cfg.verify.rel_tol;
  Json arr = Json::array();
  for (std::size_t i = 0; i < qns.size(); ++i) {
    const Item& it = items[i];
    Json j;
    j["N"] = aggregate_n(cfg.space.kind, qns[i]);
    j["quantum_numbers"] = qn_json(qns[i]);
    Json pairs = Json::array();
    for (const auto& m : it.report.matched) {
      pairs.push_back({{"solver", m.energy_a}, {"oracle", m.energy_b}, {"deviation", m.deviation}});
    }
    j["matched"] = pairs;
    Json ua = Json::array();
    for (auto k : it.report.unmatched_a) ua.push_back(it.solved.levels[k].energy);
    Json ub = Json::array();
    for (auto k : it.report.unmatched_b) ub.push_back(it.checked.levels[k].energy);
    j["unmatched_solver"] = ua;
    j["unmatched_oracle"] = ub;
    j["max_deviation"] = it.report.max_deviation;
    Json grids = Json::array();
    for (const auto& g : it.checked.grids) {
      grids.push_back({{"r_min", g.r_min}, {"r_max", g.r_max}, {"n_points", g.n_points}});
    }
    j["grids"] = grids;
    j["oracle_message"] = it.checked.message;
    j["solver_diagnostics"] = it.solved.diagnostics;
    const bool item_ok = it.report.all_matched();
    j["all_matched"] = item_ok;
    ok = ok && item_ok;
    max_dev = std::max(max_dev, it.report.max_deviation);
    arr.push_back(j);
  }
  doc["items"] = arr;
  doc["max_deviation"] = max_dev;
  doc["all_matched"] = ok;
  out << doc.dump(2) << '\n';
  if (!ok) {
    err << "verification failed: at least one solver level has no oracle partner within rel_tol = "
        << format_double(cfg.verify.rel_tol) << '\n';
    return kVerifyMismatch;
  }
  return kOk;
}

int cmd_wavefunction(const RunConfig& cfg, const SampleSpec& sample, std::ostream& out, std::ostream& err) {
  if (continuous_only(cfg, err)) return kContinuousOnly;
  if (sample.samples < 1) {
    err << "error: the sample count must be positive\n";
    return kConfigError;
  }
  const double dn = std::hypot(sample.direction.x, sample.direction.y, sample.direction.z);
  if (!(dn > 0.0) || !std::isfinite(dn)) {
    err << "error: the sampling direction must be a non-zero finite vector\n";
    return kConfigError;
  }
  const auto qns = requested(cfg);
  if (sample.qn_index < 0 || sample.qn_index >= static_cast<int>(qns.size())) {
    err << "unsolved selector: quantum-number index " << sample.qn_index << " is out of range (0.."
        << qns.size() - 1 << ")\n";
    return kEmpty;
  }
  const QuantumNumbers& qn = qns[sample.qn_index];
  const SolveResult solved = solve_levels(cfg.space, qn, cfg.solver);
  if (sample.level_index < 0 || sample.level_index >= static_cast<int>(solved.levels.size())) {
    err << "unsolved selector: level " << sample.level_index << " of N=" << aggregate_n(cfg.space.kind, qn)
        << " does not exist (" << solved.levels.size() << " roots found)\n";
    for (const auto& d : solved.diagnostics) err << d << '\n';
    return kEmpty;
  }
  const EnergyLevel& level = solved.levels[sample.level_index];
  BoundState state = assemble(cfg.space, level, sample.chart.value_or(default_chart(qn.scheme)));
  const NormReport norm = normalize(state);
  const double residual = ode_residual(state, default_residual_grid(state));

  const double s_max = sample.s_max > 0.0 ? sample.s_max : 6.0 * length_scale(state);
  const Point3 u{sample.direction.x / dn, sample.direction.y / dn, sample.direction.z / dn};

  struct Sample {
    Point3 p;
    double s = 0.0, psi = kNaN;
  };
  std::vector<Sample> pts(sample.samples);
  for (int i = 0; i < sample.samples; ++i) {
    const double s = s_max * (i + 1) / sample.samples;
    Sample& smp = pts[i];
    smp.s = s;
    smp.p = {s * u.x, s * u.y, s * u.z};
    try {
      smp.psi = evaluate(state, smp.p);
    } catch (const DomainError&) {
      // singular plane or f <= 0: the sample stays NaN
    }
  }

  if (cfg.output.format == "json") {
    Json doc;
    doc["header"] = header_line("wavefunction", cfg.space.units).substr(2);
    doc["units"] = units_json(cfg.space.units);
    doc["energy"] = level.energy;
    doc["quantum_numbers"] = qn_json(level.qn);
    doc["chart"] = std::string(to_string(state.chart));
    doc["norm_const"] = norm.norm_const;
    doc["norm_error"] = norm.error_estimate;
    doc["ode_residual"] = residual;
    Json arr = Json::array();
    for (const auto& smp : pts) {
      arr.push_back({{"x", smp.p.x}, {"y", smp.p.y}, {"z", smp.p.z}, {"s", smp.s}, {"psi", num(smp.psi)},
                     {"psi2", num(smp.psi * smp.psi)}});
    }
    doc["samples"] = arr;
    out << doc.dump(2) << '\n';
  } else {
    out << header_line("wavefunction", cfg.space.units) << '\n';
    out << "# energy=" << format_double(level.energy) << " N=" << level.n_aggregate << " labels=" << labels_text(level.qn)
        << " chart=" << to_string(state.chart) << '\n';
    out << "# norm_const=" << format_double(norm.norm_const) << " norm_error=" << format_double(norm.error_estimate)
        << " ode_residual=" << format_double(residual) << '\n';
    out << "x,y,z,s,psi,psi2\n";
    for (const auto& smp : pts) {
      out << format_double(smp.p.x) << ',' << format_double(smp.p.y) << ',' << format_double(smp.p.z) << ','
          << format_double(smp.s) << ',' << format_double(smp.psi) << ',' << format_double(smp.psi * smp.psi) << '\n';
    }
  }
  return kOk;
}

int cmd_info(const std::string& id, const std::string& format, std::ostream& out, std::ostream& err) {
  std::vector<catalog::PotentialEntry> selected;
  if (id.empty()) {
    selected.assign(catalog::entries().begin(), catalog::entries().end());
  } else if (auto e = catalog::find(id)) {
    selected.push_back(*e);
  } else {
    err << "unknown potential or space id '" << id << "' (use V1..V5 or KI..KV)\n";
    return kConfigError;
  }

  if (format == "json") {
    Json arr = Json::array();
    for (const auto& e : selected) {
      Json systems = Json::array();
      for (const auto& s : e.systems) systems.push_back({{"name", std::string(s.name)}, {"path_integrable", s.path_integrable}});
      arr.push_back({{"id", std::string(e.id)},
                     {"space", std::string(to_string(e.space))},
                     {"potential", std::string(e.potential)},
                     {"metric", std::string(e.metric)},
                     {"systems", systems}});
    }
    out << arr.dump(2) << '\n';
    return kOk;
  }
  out << "# koenigs " << kVersion << " info\n";
  for (const auto& e : selected) {
    out << "# " << e.id << " (" << to_string(e.space) << ") potential: " << e.potential << '\n';
    out << "# " << e.id << " (" << to_string(e.space) << ") f: " << e.metric << '\n';
  }
  out << "id,space,coordinate_system,path_integrable\n";
  for (const auto& e : selected) {
    for (const auto& s : e.systems) {
      out << e.id << ',' << to_string(e.space) << ',' << s.name << ',' << (s.path_integrable ? "yes" : "no") << '\n';
    }
  }
  return kOk;
}

}  // namespace koenigs::cli
