#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opcalc/random.hpp"

namespace opcalc {

/// Bounds and sample counts for the verification suites. Defaults reproduce
/// the acceptance sizes.
struct SuiteConfig {
  std::uint64_t seed = 7;
  GenBounds bounds{};
  std::size_t pairs = 500;         ///< filtration, symbol-compat
  std::size_t samples = 200;       ///< most other property loops
  std::size_t d1_specs = 20;
  std::size_t d_specs = 12;
  std::size_t s_specs = 20;
  std::size_t auto_pairs = 200;    ///< pairs per automorphism spec
  std::size_t potentials = 100;
  std::size_t expressions = 100;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  /// Each failure names the check and its inputs in canonical text form.
  std::vector<std::string> failures;
  double wall_seconds = 0;
  /// Per-suite reports when name == "all".
  std::vector<SuiteReport> parts;

  bool pass() const noexcept { return failures.empty(); }
};

/// filtration, symbol-compat, grothendieck, nilpotency, centralizer, adjoint,
/// cocycle, aut-d1, aut-d, aut-s, roundtrip (in the order `all` runs them).
const std::vector<std::string>& suite_names();

/// Runs one suite or `all`; throws DomainError for an unknown name.
/// Deterministic: each suite draws from its own engine derived from the seed.
SuiteReport run_verification_suite(std::string_view name, const SuiteConfig& config = {});

}  // namespace opcalc
