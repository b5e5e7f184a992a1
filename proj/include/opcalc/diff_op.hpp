#pragma once

#include "opcalc/fiber_terms.hpp"

namespace opcalc {

struct OperatorTag {
  static constexpr const char* fiber_prefix = "d";
};

/// Normal-ordered linear differential operator Σ_α a_α(x) ∂^α with polynomial
/// coefficients. Text form: `x1^2*d1*d2 + d3 + 1`.
using DiffOp = FiberTerms<OperatorTag>;

}  // namespace opcalc
