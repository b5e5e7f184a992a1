#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "opcalc/automorphy.hpp"

namespace opcalc {

using AutoSpec = std::variant<D1AutoSpec, DAutoSpec, SAutoSpec>;

/// Reads a flat `key = value` block, one pair per line, `#` starting a comment.
///
///   family = d1 | d | s      (required)
///   dim    = n               (optional when the caller supplies n)
///   kappa  = p/q             (d1, s; default 1)
///   lambda = p/q             (d1; default 0)
///   a      = 0 | 1           (d; default 0)
///   omega<i> = polynomial    (default 0)
///   row<i>   = r_1 ... r_n   (rows of A; default identity)
///   offset   = b_1 ... b_n   (default 0)
///
/// Throws ParseError (with the line number as offset) or DomainError.
AutoSpec parse_auto_spec(std::string_view text, std::optional<std::size_t> n = std::nullopt);

/// Writes every key, rationals as `p/q`, so that parsing the output yields an equal spec.
std::string format_auto_spec(const AutoSpec& spec);

}  // namespace opcalc
