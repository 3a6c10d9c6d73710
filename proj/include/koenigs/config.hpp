#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "koenigs/spectra.hpp"

namespace koenigs {

using Json = nlohmann::ordered_json;

/// Either explicit label triples or an aggregate-N range expanded to
/// representative labels (see labels_for_n).
struct QnRequest {
  QnScheme scheme = QnScheme::polar;
  std::vector<std::array<int, 3>> labels;
  std::optional<std::pair<int, int>> n_range;  // inclusive
  std::array<int, 3> branch_signs{1, 1, 1};
};

struct OutputSpec {
  std::string format = "csv";
  std::string path;  // empty means stdout
};

struct VerifySpec {
  int n_points = 4000;
  double rel_tol = 1e-4;
};

struct RunConfig {
  SpaceSpec space;
  QnRequest quantum_numbers;
  SolverConfig solver;
  OutputSpec output;
  VerifySpec verify;
};

/// Validating loader: unknown keys, constants that do not belong to the
/// space kind, wrong types and out-of-range values all raise ConfigError.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::string& path);

Json to_json(const SpaceSpec& spec);
SpaceSpec space_from_json(const Json& j);

Json to_json(const RunConfig& cfg);

/// Maps "k1"/"k2"/"k3" and "k_x"/"k_y"/"k_z" to branch slots 0..2.
int branch_slot(const std::string& name);

/// Parses "k1=+,k2=-" into per-slot overrides (0 = unset).
std::array<int, 3> parse_branch_list(const std::string& text);

/// Quantum numbers requested by the config, in order.
std::vector<QuantumNumbers> expand(const QnRequest& req, SpaceKind kind);

}  // namespace koenigs
