#pragma once

namespace koenigs {

// Action and mass units. Natural units (hbar = m = 1) by default.
struct UnitScalars {
  double hbar = 1.0;
  double mass = 1.0;

  bool operator==(const UnitScalars&) const = default;
};

}  // namespace koenigs
