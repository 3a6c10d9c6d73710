#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "koenigs/commands.hpp"
#include "koenigs/config.hpp"
#include "koenigs/errors.hpp"

using namespace koenigs;

namespace {

std::string data(const std::string& name) { return std::string(KOENIGS_TEST_DATA) + "/" + name; }

// Data rows of a CSV stream: comment lines and the column header are dropped.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Run capture(F&& fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("SpaceSpec survives a JSON round trip") {
  SpaceSpec s;
  s.kind = SpaceKind::KI;
  s.alpha = -0.3, s.beta_x = 0.1, s.beta_z = 0.25, s.delta = 1.5;
  s.omega = 2.0, s.k_x = 0.5, s.k_y = 0.25;
  s.units.hbar = 2.0, s.units.mass = 3.0;
  const SpaceSpec back = space_from_json(to_json(s));
  CHECK(back.kind == s.kind);
  CHECK(back.alpha == s.alpha);
  CHECK(back.beta_x == s.beta_x);
  CHECK(back.beta_z == s.beta_z);
  CHECK(back.delta == s.delta);
  CHECK(back.omega == s.omega);
  CHECK(back.k_x == s.k_x);
  CHECK(back.k_y == s.k_y);
  CHECK(back.units.hbar == 2.0);
  CHECK(back.units.mass == 3.0);

  SpaceSpec c;
  c.kind = SpaceKind::KIII;
  c.alpha1 = 0.5, c.alpha2 = 1.0, c.beta = 0.1, c.gamma = 0.05, c.delta = 1.0;
  const SpaceSpec cb = space_from_json(to_json(c));
  CHECK(cb.kind == SpaceKind::KIII);
  CHECK(cb.alpha1 == 0.5);
  CHECK(cb.alpha2 == 1.0);
  CHECK(cb.gamma == 0.05);
}

TEST_CASE("parse_config: defaults and quantum-number requests") {
  const RunConfig cfg = load_config(data("ki_flat.json"));
  CHECK(cfg.space.kind == SpaceKind::KI);
  REQUIRE(cfg.quantum_numbers.n_range.has_value());
  CHECK(cfg.quantum_numbers.n_range->second == 4);
  CHECK(cfg.output.format == "csv");
  CHECK(expand(cfg.quantum_numbers, SpaceKind::KI).size() == 5);

  Json doc = Json::parse(R"({"space": {"kind": "KIII", "metric": {"delta": 1}, "potential": {"alpha2": 1}}})");
  const RunConfig c3 = parse_config(doc);
  const auto q3 = expand(c3.quantum_numbers, SpaceKind::KIII);
  REQUIRE(q3.size() == 1);
  CHECK(aggregate_n(SpaceKind::KIII, q3[0]) == 2);

  Json lab = Json::parse(R"({"space": {"kind": "KI", "metric": {"delta": 1}, "potential": {"omega": 1}},
    "quantum_numbers": {"scheme": "cartesian", "labels": [[1, 0, 2]], "branch_signs": {"k1": "-"}}})");
  const auto ql = expand(parse_config(lab).quantum_numbers, SpaceKind::KI);
  REQUIRE(ql.size() == 1);
  CHECK(ql[0].scheme == QnScheme::cartesian);
  CHECK(ql[0].labels[2] == 2);
  CHECK(ql[0].branch_signs[0] == -1);

  CHECK(parse_branch_list("k1=+,k_z=-") == std::array<int, 3>{1, 0, -1});  // 0 leaves a slot unset
  CHECK_THROWS_AS(parse_branch_list("k4=+"), ConfigError);
}

TEST_CASE("parse_config: rejections") {
  CHECK_THROWS_AS(load_config(data("malformed.json")), ConfigError);
  CHECK_THROWS_AS(load_config(data("unknown_key.json")), ConfigError);
  CHECK_THROWS_AS(load_config(data("foreign_constant.json")), ConfigError);
  CHECK_THROWS_AS(load_config(data("does_not_exist.json")), ConfigError);

  auto bad = [](const char* text) { return parse_config(Json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"space": {"kind": "KVI", "metric": {}, "potential": {}}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"space": {"kind": "KI", "metric": {"delta": "one"}, "potential": {}}})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"space": {"kind": "KI", "metric": {"delta": 1}, "potential": {}},
                          "quantum_numbers": {"labels": [[0,0,0]], "n_range": [0, 1]}})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"space": {"kind": "KI", "metric": {"delta": 1}, "potential": {}},
                          "verify": {"n_points": 100}})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"space": {"kind": "KI", "metric": {"delta": 1}, "potential": {}},
                          "output": {"format": "xml"}})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"space": {"kind": "KI", "metric": {"delta": 1}, "potential": {}},
                          "units": {"hbar": 0}})"),
                  ConfigError);
}

TEST_CASE("cmd_solve: flat oscillator table") {
  const RunConfig cfg = load_config(data("ki_flat.json"));
  const Run r = capture([&](auto& o, auto& e) { return cli::cmd_solve(cfg, o, e); });
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("# koenigs 1.0 solve", 0) == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 5);
  for (int n = 0; n < 5; ++n) {
    REQUIRE(rows[n].size() == 8);
    CHECK(rows[n][0] == "KI");
    CHECK(std::stoi(rows[n][1]) == n);
    CHECK(std::abs(std::stod(rows[n][4]) - (2.0 * n + 3.0)) < 1e-12 * (2.0 * n + 3.0));
    CHECK(rows[n][7] == "root_solver");
  }
}

TEST_CASE("cmd_solve: exit codes for continuous-only and empty selections") {
  const Run four = capture([&](auto& o, auto& e) { return cli::cmd_solve(load_config(data("kiv.json")), o, e); });
  CHECK(four.code == cli::kContinuousOnly);
  CHECK(four.err.find("continuous") != std::string::npos);
  const Run five = capture([&](auto& o, auto& e) { return cli::cmd_solve(load_config(data("kv.json")), o, e); });
  CHECK(five.code == cli::kContinuousOnly);
  const Run none = capture([&](auto& o, auto& e) { return cli::cmd_solve(load_config(data("ki_no_levels.json")), o, e); });
  CHECK(none.code == cli::kEmpty);
}

TEST_CASE("cmd_solve: output is byte-identical across runs") {
  const RunConfig cfg = load_config(data("kiii_coulomb.json"));
  const Run a = capture([&](auto& o, auto& e) { return cli::cmd_solve(cfg, o, e); });
  const Run b = capture([&](auto& o, auto& e) { return cli::cmd_solve(cfg, o, e); });
  CHECK(a.code == cli::kOk);
  CHECK(a.out == b.out);
  RunConfig js = cfg;
  js.output.format = "json";
  const Run j = capture([&](auto& o, auto& e) { return cli::cmd_solve(js, o, e); });
  const Json doc = Json::parse(j.out);
  CHECK(doc.is_object());
}

TEST_CASE("cmd_special_cases: closed form against the solver") {
  const RunConfig cfg = load_config(data("ki_case3.json"));
  const Run r = capture([&](auto& o, auto& e) { return cli::cmd_special_cases(cfg, "KI.3", o, e); });
  CHECK(r.code == cli::kOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::stod(rows[n][3]) == doctest::Approx((2.0 / 0.5) * (2 * n + 3)).epsilon(1e-14));
    CHECK(std::stod(rows[n][5]) < 1e-10);
    CHECK(rows[n][6] == "ok");
  }
  const Run unknown = capture([&](auto& o, auto& e) { return cli::cmd_special_cases(cfg, "KI.9", o, e); });
  CHECK(unknown.code == cli::kConfigError);
}

TEST_CASE("cmd_deltav: values and status column") {
  std::istringstream pts("0.5 0.7 1.1\n1.2, -0.4, 0.3\n0 1 1\n");
  const auto points = cli::read_points(pts);
  REQUIRE(points.size() == 3);
  const RunConfig cfg = load_config(data("ki_hyperboloid.json"));
  const Run r = capture([&](auto& o, auto& e) { return cli::cmd_deltav(cfg, points, o, e); });
  CHECK(r.code == cli::kOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::stod(rows[i][6]) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(std::abs(std::stod(rows[i][7]) - 0.375) < 1e-6);
    CHECK(rows[i][8] == "ok");
  }
  CHECK(rows[2][4] == "nan");
  CHECK(rows[2][8] == "split_undefined");

  std::istringstream garbage("1 2\n");
  CHECK_THROWS_AS(cli::read_points(garbage), ConfigError);
}

TEST_CASE("cmd_info: catalog lookups") {
  auto systems = [](const std::string& id) {
    const Run r = capture([&](auto& o, auto& e) { return cli::cmd_info(id, "csv", o, e); });
    REQUIRE(r.code == cli::kOk);
    std::vector<std::string> out;
    for (const auto& row : csv_rows(r.out)) out.push_back(row[2] + (row[3] == "yes" ? "*" : ""));
    return out;
  };
  CHECK(systems("V1") == std::vector<std::string>{"Cartesian*", "Spherical*", "Circular Polar*", "Circular Elliptic",
                                                   "Conical", "Oblate Spheroidal", "Prolate Spheroidal", "Ellipsoidal"});
  CHECK(systems("V3") == std::vector<std::string>{"Conical", "Spherical*", "Parabolic*", "Prolate Spheroidal II"});
  CHECK(systems("KIII") == systems("V3"));

  const Run j = capture([&](auto& o, auto& e) { return cli::cmd_info("V1", "json", o, e); });
  CHECK(Json::parse(j.out).is_array());
  const Run bad = capture([&](auto& o, auto& e) { return cli::cmd_info("V9", "csv", o, e); });
  CHECK(bad.code == cli::kConfigError);
}

TEST_CASE("cmd_wavefunction: samples along a ray") {
  const RunConfig cfg = load_config(data("ki_flat.json"));
  cli::SampleSpec s;
  s.samples = 50;
  const Run r = capture([&](auto& o, auto& e) { return cli::cmd_wavefunction(cfg, s, o, e); });
  CHECK(r.code == cli::kOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 50);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 6);
    CHECK(std::stod(row[5]) == doctest::Approx(std::stod(row[4]) * std::stod(row[4])).epsilon(1e-12));
  }
  cli::SampleSpec off = s;
  off.qn_index = 17;
  CHECK(capture([&](auto& o, auto& e) { return cli::cmd_wavefunction(cfg, off, o, e); }).code == cli::kEmpty);
}

TEST_CASE("format_double and header_line") {
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(std::nan("")) == "nan");
  UnitScalars u;
  u.hbar = 2.0;
  CHECK(cli::header_line("solve", u) == "# koenigs 1.0 solve units hbar=2 mass=1");
}
