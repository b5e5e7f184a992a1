#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opcalc/rational.hpp"

namespace opcalc {

/// Joins (coefficient, monomial) pairs into `3*x1^2*x2 - x1 + 1/2` style text.
/// Unit coefficients are elided; an empty list prints as `0`.
std::string format_terms(const std::vector<std::pair<Rational, std::string>>& terms);

}  // namespace opcalc
