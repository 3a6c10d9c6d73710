#pragma once

#include "koenigs/spectra.hpp"

namespace koenigs::detail {

// The two sides of the quantization condition, residual = lhs - rhs.
struct ResidualTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

ResidualTerms residual_terms(const SpaceSpec& spec, const QuantumNumbers& qn, double energy);

}  // namespace koenigs::detail
