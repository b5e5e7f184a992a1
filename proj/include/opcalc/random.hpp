#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "opcalc/affine.hpp"
#include "opcalc/diff_op.hpp"
#include "opcalc/expression.hpp"
#include "opcalc/phase_symbol.hpp"
#include "opcalc/polynomial.hpp"

namespace opcalc {

/// Size knobs for random elements.
struct GenBounds {
  std::size_t max_dim = 3;
  unsigned max_order = 4;
  unsigned max_degree = 4;
  int coeff_bound = 9;
  /// Upper bound on fiber terms per element and on monomials per coefficient.
  unsigned max_terms = 3;
};

/// Deterministic generator of random kernel objects; one engine per seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi);
  std::size_t dimension(const GenBounds& bounds);
  Rational coefficient(int bound);
  Rational nonzero_rational(int bound);
  MultiIndex multi_index(std::size_t n, unsigned total);
  MultiIndex multi_index_up_to(std::size_t n, unsigned max_total);

  /// Random nonzero polynomial with degree ≤ max_degree.
  Polynomial polynomial(std::size_t n, unsigned max_degree, int coeff_bound, unsigned max_terms);
  /// Every monomial of degree ≤ degree with a nonzero coefficient.
  Polynomial dense_polynomial(std::size_t n, unsigned degree, int coeff_bound);
  /// Random operator whose order is exactly `order`.
  DiffOp operator_of_order(std::size_t n, unsigned order, const GenBounds& bounds);
  /// Random nonzero operator of order ≤ bounds.max_order.
  DiffOp differential_operator(std::size_t n, const GenBounds& bounds);
  DiffOp vector_field(std::size_t n, const GenBounds& bounds);
  /// f + X with X a vector field.
  DiffOp first_order(std::size_t n, const GenBounds& bounds);
  PhaseSymbol symbol(std::size_t n, const GenBounds& bounds);
  PhaseSymbol symbol_of_grade(std::size_t n, unsigned grade, const GenBounds& bounds);

  /// Invertible affine map with small integer entries.
  AffineMap affine_map(std::size_t n);
  /// df for a random polynomial f of degree ≤ max_degree (possibly zero).
  OneForm closed_form(std::size_t n, unsigned max_degree);

  /// Random operator-grammar syntax tree of bounded depth.
  Expression expression(std::size_t n, unsigned depth);

 private:
  std::mt19937_64 engine_;
};

}  // namespace opcalc
