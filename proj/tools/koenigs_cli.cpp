#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "koenigs/commands.hpp"
#include "koenigs/errors.hpp"

using namespace koenigs;

namespace {

struct Common {
  std::string config;
  std::string out;
  std::string format;
  std::optional<double> tol_rel;
  std::optional<double> scan_density;
  std::optional<double> e_max;
  std::string branch;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output file (default: output.path from the config, else stdout)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--tol-rel", c.tol_rel, "relative bisection tolerance");
  app->add_option("--scan-density", c.scan_density, "scan points per decade");
  app->add_option("--e-max", c.e_max, "largest |E| scanned");
  app->add_option("--branch", c.branch, "branch overrides, e.g. k1=+,k2=-");
}

RunConfig load(const Common& c) {
  RunConfig cfg = load_config(c.config);
  if (!c.format.empty()) cfg.output.format = c.format;
  if (!c.out.empty()) cfg.output.path = c.out;
  if (c.tol_rel) cfg.solver.tol_rel = *c.tol_rel;
  if (c.scan_density) cfg.solver.scan_points_per_decade = *c.scan_density;
  if (c.e_max) cfg.solver.e_max_abs = *c.e_max;
  if (!c.branch.empty()) {
    const auto b = parse_branch_list(c.branch);
    for (int i = 0; i < 3; ++i) {
      if (b[i] != 0) cfg.solver.branch_signs[i] = b[i];
    }
  }
  validate(cfg.solver);
  return cfg;
}

// Buffers the command output and writes it to the configured destination.
int emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return cli::kConfigError;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state spectra and wave-functions on the Koenigs spaces"};
  app.set_version_flag("--version", std::string("koenigs ") + cli::kVersion);
  app.require_subcommand(1);

  Common solve_opts, cases_opts, dv_opts, verify_opts, wf_opts;
  auto* solve = app.add_subcommand("solve", "solve the quantization condition");
  add_common(solve, solve_opts);

  auto* cases = app.add_subcommand("special-cases", "closed-form energies next to solver roots");
  add_common(cases, cases_opts);
  std::string case_id;
  cases->add_option("--case", case_id, "case id, e.g. KI.3 or KIII.1")->required();

  auto* dv = app.add_subcommand("deltav", "quantum potential at a list of points");
  add_common(dv, dv_opts);
  std::string points_path;
  dv->add_option("--points", points_path, "file with one 'x y z' point per line")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "cross-check solver roots against the finite-difference oracle");
  add_common(verify, verify_opts);
  std::optional<int> grid_points;
  std::optional<double> verify_tol;
  verify->add_option("--grid-points", grid_points, "finite-difference grid size (>= 200)");
  verify->add_option("--verify-tol", verify_tol, "relative match tolerance");

  auto* wf = app.add_subcommand("wavefunction", "sample a normalized bound state along a ray");
  add_common(wf, wf_opts);
  cli::SampleSpec sample;
  std::string chart;
  std::vector<double> direction;
  wf->add_option("--qn-index", sample.qn_index, "entry of the expanded quantum numbers (default 0)");
  wf->add_option("--level", sample.level_index, "root index in ascending energy (default 0)");
  wf->add_option("--chart", chart, "cartesian, spherical or circular_polar");
  wf->add_option("--direction", direction, "ray direction x y z")->expected(3);
  wf->add_option("--s-max", sample.s_max, "ray length (default 6 length scales)");
  wf->add_option("--samples", sample.samples, "number of samples (default 200)");

  auto* info = app.add_subcommand("info", "separability metadata of V1..V5");
  std::string info_id, info_format = "csv";
  info->add_option("id", info_id, "V1..V5 or KI..KV; omit to list all");
  info->add_option("--format", info_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kConfigError;
  }

  std::ostringstream out;
  int rc = 0;
  std::string path;
  try {
    if (*info) {
      rc = cli::cmd_info(info_id, info_format, out, std::cerr);
    } else if (*solve) {
      const auto cfg = load(solve_opts);
      path = cfg.output.path;
      rc = cli::cmd_solve(cfg, out, std::cerr);
    } else if (*cases) {
      const auto cfg = load(cases_opts);
      path = cfg.output.path;
      rc = cli::cmd_special_cases(cfg, case_id, out, std::cerr);
    } else if (*dv) {
      const auto cfg = load(dv_opts);
      path = cfg.output.path;
      std::ifstream in(points_path);
      rc = cli::cmd_deltav(cfg, cli::read_points(in), out, std::cerr);
    } else if (*verify) {
      auto cfg = load(verify_opts);
      if (grid_points) cfg.verify.n_points = *grid_points;
      if (verify_tol) cfg.verify.rel_tol = *verify_tol;
      if (cfg.verify.n_points < 200 || !(cfg.verify.rel_tol > 0.0)) {
        throw ConfigError("verify needs --grid-points >= 200 and a positive --verify-tol");
      }
      path = cfg.output.path;
      rc = cli::cmd_verify(cfg, out, std::cerr);
    } else if (*wf) {
      const auto cfg = load(wf_opts);
      path = cfg.output.path;
      if (!chart.empty()) sample.chart = parse_chart(chart);
      if (!direction.empty()) sample.direction = {direction[0], direction[1], direction[2]};
      rc = cli::cmd_wavefunction(cfg, sample, out, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kConfigError;
  }
  const int wrc = emit(path, out.str());
  return rc != 0 ? rc : wrc;
}
