#include "koenigs/catalog.hpp"

namespace koenigs::catalog {

std::span<const PotentialEntry> entries() {
  static const std::vector<PotentialEntry> table = {
      {"V1", SpaceKind::KI,
       "m w^2 r^2/2 + hbar^2/2m ((k1^2-1/4)/x^2 + (k2^2-1/4)/y^2 + (k3^2-1/4)/z^2)",
       "alpha (x^2+y^2+z^2) + beta_x/x^2 + beta_y/y^2 + beta_z/z^2 + delta",
       {{"Cartesian", true},
        {"Spherical", true},
        {"Circular Polar", true},
        {"Circular Elliptic", false},
        {"Conical", false},
        {"Oblate Spheroidal", false},
        {"Prolate Spheroidal", false},
        {"Ellipsoidal", false}}},
      {"V2", SpaceKind::KII,
       "m w^2 (x^2+y^2+4z^2)/2 + hbar^2/2m ((k1^2-1/4)/x^2 + (k2^2-1/4)/y^2)",
       "alpha (x^2+y^2+4z^2) + beta_x/x^2 + beta_y/y^2 + delta",
       {{"Cartesian", true}, {"Parabolic", false}, {"Circular Polar", true}, {"Circular Elliptic", false}}},
      {"V3", SpaceKind::KIII,
       "-alpha/r + hbar^2/2m ((k1^2-1/4)/x^2 + (k2^2-1/4)/y^2)",
       "-alpha1/r + beta/x^2 + gamma/y^2 + delta",
       {{"Conical", false}, {"Spherical", true}, {"Parabolic", true}, {"Prolate Spheroidal II", false}}},
      {"V4", SpaceKind::KIV,
       "hbar^2/2m (k1^2 x/(y^2 sqrt(x^2+y^2)) + (k2^2-1/4)/y^2 + (k3^2-1/4)/z^2)",
       "hbar^2/2m (alpha x/(y^2 sqrt(x^2+y^2)) + beta/y^2 + gamma/z^2) + delta",
       {{"Spherical", true}, {"Circular Elliptic II", false}, {"Circular Parabolic", true}, {"Circular Polar", true}}},
      {"V5", SpaceKind::KV,
       "hbar^2/2m (k1^2 x/(y^2 sqrt(x^2+y^2)) + (k2^2-1/4)/y^2) - k3 z",
       "hbar^2/2m (alpha x/(y^2 sqrt(x^2+y^2)) + beta/y^2) + gamma z + delta",
       {{"Circular Polar", true}, {"Circular Elliptic II", false}, {"Circular Parabolic", true}, {"Parabolic", false}}},
  };
  return table;
}

std::optional<PotentialEntry> find(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.id == id || to_string(e.space) == id) return e;
  }
  return std::nullopt;
}

}  // namespace koenigs::catalog
