#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "koenigs/spaces.hpp"

namespace koenigs::catalog {

struct CoordinateSystem {
  std::string_view name;
  bool path_integrable = false;  // an explicit path-integral solution is known
};

/// Static separability metadata of one flat-space superintegrable potential
/// and the Koenigs space built on it.
struct PotentialEntry {
  std::string_view id;           // "V1".."V5"
  SpaceKind space;               // KI..KV
  std::string_view potential;    // plain-text formula
  std::string_view metric;       // plain-text f
  std::vector<CoordinateSystem> systems;
};

std::span<const PotentialEntry> entries();

/// Looks up by potential id ("V3") or space name ("KIII"). Case-sensitive.
std::optional<PotentialEntry> find(std::string_view id);

}  // namespace koenigs::catalog
