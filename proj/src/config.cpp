#include "koenigs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "koenigs/errors.hpp"

namespace koenigs {
namespace {

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": must be finite");
  return x;
}

int integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

std::string text(const Json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

int sign_of(const std::string& s, const std::string& where) {
  if (s == "+") return 1;
  if (s == "-") return -1;
  throw ConfigError(where + ": branch sign must be \"+\" or \"-\"");
}

void read_fields(const Json& obj, std::span<const SpaceField> fields, SpaceSpec& spec, const std::string& where) {
  std::set<std::string> allowed;
  for (const auto& f : fields) allowed.insert(std::string(f.name));
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(where + ": '" + key + "' is not a constant of space " + std::string(to_string(spec.kind)));
    }
  }
  for (const auto& f : fields) {
    if (obj.contains(std::string(f.name))) spec.*f.member = number(obj.at(std::string(f.name)), where + "." + std::string(f.name));
  }
}

UnitScalars units_from_json(const Json& j, const std::string& where) {
  reject_unknown(j, {"hbar", "mass"}, where);
  UnitScalars u;
  if (j.contains("hbar")) u.hbar = number(j.at("hbar"), where + ".hbar");
  if (j.contains("mass")) u.mass = number(j.at("mass"), where + ".mass");
  if (!(u.hbar > 0.0) || !(u.mass > 0.0)) throw ConfigError(where + ": hbar and mass must be positive");
  return u;
}

std::array<int, 3> signs_from_json(const Json& j, const std::string& where, int unset) {
  std::array<int, 3> out{unset, unset, unset};
  if (!j.is_object()) throw ConfigError(where + ": expected an object such as {\"k1\": \"-\"}");
  for (const auto& [key, value] : j.items()) {
    int slot;
    try {
      slot = branch_slot(key);
    } catch (const ConfigError&) {
      throw ConfigError(where + ": unknown branch '" + key + "'");
    }
    out[slot] = sign_of(text(value, where + "." + key), where + "." + key);
  }
  return out;
}

QuantumNumbers labels_in_scheme(SpaceKind kind, QnScheme scheme, int n) {
  QuantumNumbers qn = labels_for_n(kind, n);
  if (qn.scheme == scheme) return qn;
  qn.scheme = scheme;
  switch (scheme) {
    case QnScheme::polar: qn.labels = {n, 0, 0}; break;
    case QnScheme::cartesian: qn.labels = {0, 0, n}; break;
    case QnScheme::cylindrical: qn.labels = {0, n, 0}; break;
    case QnScheme::coulomb: qn.labels = {n - 2, 0, 0}; break;
  }
  aggregate_n(kind, qn);
  return qn;
}

}  // namespace

int branch_slot(const std::string& name) {
  if (name == "k1" || name == "k_x") return 0;
  if (name == "k2" || name == "k_y") return 1;
  if (name == "k3" || name == "k_z") return 2;
  throw ConfigError("unknown branch name '" + name + "' (use k1, k2, k3 or k_x, k_y, k_z)");
}

std::array<int, 3> parse_branch_list(const std::string& list) {
  std::array<int, 3> out{0, 0, 0};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--branch entries look like k1=+ or k2=-");
    out[branch_slot(item.substr(0, eq))] = sign_of(item.substr(eq + 1), "--branch");
  }
  return out;
}

SpaceSpec space_from_json(const Json& j) {
  reject_unknown(j, {"kind", "metric", "potential", "units"}, "space");
  if (!j.contains("kind")) throw ConfigError("space.kind is required");
  SpaceSpec spec;
  try {
    spec.kind = parse_space_kind(text(j.at("kind"), "space.kind"));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("space.kind: ") + e.what());
  }
  if (j.contains("metric")) read_fields(j.at("metric"), metric_fields(spec.kind), spec, "space.metric");
  if (j.contains("potential")) read_fields(j.at("potential"), potential_fields(spec.kind), spec, "space.potential");
  if (j.contains("units")) spec.units = units_from_json(j.at("units"), "space.units");
  return spec;
}

Json to_json(const SpaceSpec& spec) {
  Json j;
  j["kind"] = std::string(to_string(spec.kind));
  Json metric = Json::object();
  for (const auto& f : metric_fields(spec.kind)) metric[std::string(f.name)] = spec.*f.member;
  Json pot = Json::object();
  for (const auto& f : potential_fields(spec.kind)) pot[std::string(f.name)] = spec.*f.member;
  j["metric"] = metric;
  j["potential"] = pot;
  j["units"] = {{"hbar", spec.units.hbar}, {"mass", spec.units.mass}};
  return j;
}

RunConfig parse_config(const Json& doc) {
  reject_unknown(doc, {"space", "units", "quantum_numbers", "solver", "output", "verify"}, "config");
  if (!doc.contains("space")) throw ConfigError("config: 'space' is required");
  RunConfig cfg;
  cfg.space = space_from_json(doc.at("space"));
  if (doc.contains("units")) {
    const UnitScalars u = units_from_json(doc.at("units"), "units");
    if (doc.at("space").contains("units") && !(u == cfg.space.units)) {
      throw ConfigError("units given both at top level and in space, with different values");
    }
    cfg.space.units = u;
  }

  if (doc.contains("quantum_numbers")) {
    const Json& q = doc.at("quantum_numbers");
    reject_unknown(q, {"scheme", "labels", "n_range", "branch_signs"}, "quantum_numbers");
    cfg.quantum_numbers.scheme = labels_for_n(cfg.space.kind, cfg.space.kind == SpaceKind::KIII ? 2 : 0).scheme;
    if (q.contains("scheme")) {
      try {
        cfg.quantum_numbers.scheme = parse_qn_scheme(text(q.at("scheme"), "quantum_numbers.scheme"));
      } catch (const ParameterError& e) {
        throw ConfigError(std::string("quantum_numbers.scheme: ") + e.what());
      }
    }
    if (q.contains("labels") == q.contains("n_range")) {
      throw ConfigError("quantum_numbers: give exactly one of 'labels' or 'n_range'");
    }
    if (q.contains("labels")) {
      const Json& ls = q.at("labels");
      if (!ls.is_array() || ls.empty()) throw ConfigError("quantum_numbers.labels: expected a non-empty array");
      for (const auto& t : ls) {
        if (!t.is_array() || t.size() != 3) throw ConfigError("quantum_numbers.labels: each entry is [n1, n2, n3]");
        std::array<int, 3> l{};
        for (int i = 0; i < 3; ++i) {
          l[i] = integer(t[i], "quantum_numbers.labels");
          if (l[i] < 0) throw ConfigError("quantum_numbers.labels: labels must be non-negative");
        }
        cfg.quantum_numbers.labels.push_back(l);
      }
    } else {
      const Json& r = q.at("n_range");
      if (!r.is_array() || r.size() != 2) throw ConfigError("quantum_numbers.n_range: expected [N_min, N_max]");
      const int a = integer(r[0], "quantum_numbers.n_range");
      const int b = integer(r[1], "quantum_numbers.n_range");
      if (a < 0 || b < a) throw ConfigError("quantum_numbers.n_range: need 0 <= N_min <= N_max");
      cfg.quantum_numbers.n_range = std::make_pair(a, b);
    }
    if (q.contains("branch_signs")) {
      cfg.quantum_numbers.branch_signs = signs_from_json(q.at("branch_signs"), "quantum_numbers.branch_signs", 1);
    }
  } else {
    cfg.quantum_numbers.scheme = labels_for_n(cfg.space.kind, cfg.space.kind == SpaceKind::KIII ? 2 : 0).scheme;
    cfg.quantum_numbers.n_range = cfg.space.kind == SpaceKind::KIII ? std::make_pair(2, 2) : std::make_pair(0, 0);
  }

  if (doc.contains("solver")) {
    const Json& s = doc.at("solver");
    reject_unknown(s, {"scan_points_per_decade", "tol_rel", "e_max_abs", "dedupe_rel", "branch_signs"}, "solver");
    if (s.contains("scan_points_per_decade")) cfg.solver.scan_points_per_decade = number(s.at("scan_points_per_decade"), "solver.scan_points_per_decade");
    if (s.contains("tol_rel")) cfg.solver.tol_rel = number(s.at("tol_rel"), "solver.tol_rel");
    if (s.contains("e_max_abs")) cfg.solver.e_max_abs = number(s.at("e_max_abs"), "solver.e_max_abs");
    if (s.contains("dedupe_rel")) cfg.solver.dedupe_rel = number(s.at("dedupe_rel"), "solver.dedupe_rel");
    if (s.contains("branch_signs")) cfg.solver.branch_signs = signs_from_json(s.at("branch_signs"), "solver.branch_signs", 0);
  }
  validate(cfg.solver);

  if (doc.contains("output")) {
    const Json& o = doc.at("output");
    reject_unknown(o, {"format", "path"}, "output");
    if (o.contains("format")) cfg.output.format = text(o.at("format"), "output.format");
    if (o.contains("path")) cfg.output.path = text(o.at("path"), "output.path");
  }
  if (cfg.output.format != "csv" && cfg.output.format != "json") {
    throw ConfigError("output.format must be \"csv\" or \"json\"");
  }

  if (doc.contains("verify")) {
    const Json& v = doc.at("verify");
    reject_unknown(v, {"n_points", "rel_tol"}, "verify");
    if (v.contains("n_points")) cfg.verify.n_points = integer(v.at("n_points"), "verify.n_points");
    if (v.contains("rel_tol")) cfg.verify.rel_tol = number(v.at("rel_tol"), "verify.rel_tol");
    if (cfg.verify.n_points < 200) throw ConfigError("verify.n_points must be at least 200");
    if (!(cfg.verify.rel_tol > 0.0)) throw ConfigError("verify.rel_tol must be positive");
  }

  try {
    validate(cfg.space);
    expand(cfg.quantum_numbers, cfg.space.kind);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON in '") + path + "': " + e.what());
  }
  return parse_config(doc);
}

Json to_json(const RunConfig& cfg) {
  Json j;
  Json space = to_json(cfg.space);
  const Json units = space["units"];
  space.erase("units");
  j["space"] = space;
  j["units"] = units;
  Json q;
  q["scheme"] = std::string(to_string(cfg.quantum_numbers.scheme));
  if (cfg.quantum_numbers.n_range) {
    q["n_range"] = {cfg.quantum_numbers.n_range->first, cfg.quantum_numbers.n_range->second};
  } else {
    q["labels"] = cfg.quantum_numbers.labels;
  }
  const char* names[3] = {"k1", "k2", "k3"};
  Json qs = Json::object();
  for (int i = 0; i < 3; ++i) qs[names[i]] = cfg.quantum_numbers.branch_signs[i] > 0 ? "+" : "-";
  q["branch_signs"] = qs;
  j["quantum_numbers"] = q;
  Json s;
  s["scan_points_per_decade"] = cfg.solver.scan_points_per_decade;
  s["tol_rel"] = cfg.solver.tol_rel;
  s["e_max_abs"] = cfg.solver.e_max_abs;
  s["dedupe_rel"] = cfg.solver.dedupe_rel;
  Json ss = Json::object();
  for (int i = 0; i < 3; ++i) {
    if (cfg.solver.branch_signs[i] != 0) ss[names[i]] = cfg.solver.branch_signs[i] > 0 ? "+" : "-";
  }
  s["branch_signs"] = ss;
  j["solver"] = s;
  j["output"] = {{"format", cfg.output.format}, {"path", cfg.output.path}};
  j["verify"] = {{"n_points", cfg.verify.n_points}, {"rel_tol", cfg.verify.rel_tol}};
  return j;
}

std::vector<QuantumNumbers> expand(const QnRequest& req, SpaceKind kind) {
  std::vector<QuantumNumbers> out;
  if (req.n_range) {
    for (int n = req.n_range->first; n <= req.n_range->second; ++n) {
      QuantumNumbers qn = labels_in_scheme(kind, req.scheme, n);
      qn.branch_signs = req.branch_signs;
      out.push_back(qn);
    }
  } else {
    for (const auto& l : req.labels) {
      QuantumNumbers qn{req.scheme, l, req.branch_signs};
      aggregate_n(kind, qn);
      out.push_back(qn);
    }
  }
  return out;
}

}  // namespace koenigs
