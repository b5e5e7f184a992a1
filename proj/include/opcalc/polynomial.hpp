#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/multi_index.hpp"
#include "opcalc/rational.hpp"

namespace opcalc {

/// Exact polynomial in x1..xn over the rationals, stored sparsely in graded-lex
/// order with no zero coefficients. The zero polynomial has no terms and no degree.
class Polynomial {
 public:
  using Term = std::pair<MultiIndex, Rational>;
  /// Sorted by GradedLexGreater on the exponent, no duplicates.
  using Terms = std::vector<Term>;

  explicit Polynomial(std::size_t n);
  Polynomial(std::size_t n, const Rational& c);

  static Polynomial variable(std::size_t n, std::size_t i);
  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1);

  std::size_t dim() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Total degree; std::nullopt for the zero polynomial.
  std::optional<unsigned> degree() const;
  Rational coefficient(const MultiIndex& alpha) const;
  Rational constant_term() const;

  /// Adds c·x^α in place, dropping the term if it cancels.
  void add_term(const MultiIndex& alpha, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// ∂/∂x_i, i 0-based.
  Polynomial derivative(std::size_t i) const;
  /// ∂^α.
  Polynomial derivative(const MultiIndex& alpha) const;

  /// Simultaneous substitution x_i ↦ images[i].
  Polynomial substitute(std::span<const Polynomial> images) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Canonical text, e.g. `3*x1^2*x2 - 1/2`.
  std::string to_string() const;

 private:
  /// Sorts, merges duplicates and drops zeros.
  void normalize_terms();

  Terms terms_;
  std::size_t n_;
};

Polynomial pow(const Polynomial& p, unsigned k);

/// Tagged arithmetic entry point mirroring the four ring operations.
enum class PolyOp { add, mul, scale, neg };
Polynomial poly_arith(PolyOp op, const Polynomial& p, const Polynomial& q);
Polynomial poly_arith(PolyOp op, const Polynomial& p, const Rational& c);

}  // namespace opcalc
