#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "opcalc/diff_op.hpp"
#include "opcalc/phase_symbol.hpp"
#include "opcalc/polynomial.hpp"
#include "opcalc/rational.hpp"

namespace opcalc {

/// Which atoms an expression may contain besides rationals and x1..xn.
enum class Grammar {
  operators,  ///< d1..dn, non-commuting products
  symbols,    ///< xi1..xin, commuting products
};

/// Syntax tree of a written expression. Products keep their written order.
struct Expression {
  enum class Kind { literal, coordinate, derivation, fiber, sum, product, power, negate };

  Kind kind = Kind::literal;
  Rational value;            // literal
  std::size_t index = 0;     // coordinate / derivation / fiber, 0-based
  unsigned exponent = 0;     // power
  std::vector<Expression> children;
};

/// expr   := ['-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := atom ('^' nat)?
/// atom   := rational | x<i> | d<i> | xi<i> | '(' expr ')'
/// Throws ParseError carrying the byte offset of the offending token.
Expression parse_expression(std::string_view text, std::size_t n, Grammar grammar = Grammar::operators);

/// Evaluates a parsed operator expression into normal-ordered form.
DiffOp normalize(const Expression& e, std::size_t n);
/// Evaluates a parsed symbol expression (products commute).
PhaseSymbol normalize_symbol(const Expression& e, std::size_t n);

/// Applies the written composition directly to f, innermost factor first,
/// without normal ordering.
Polynomial act(const Expression& e, const Polynomial& f);

DiffOp parse_operator(std::string_view text, std::size_t n);
PhaseSymbol parse_symbol(std::string_view text, std::size_t n);
/// Operator-grammar text that must denote a function (no d<i>).
Polynomial parse_polynomial(std::string_view text, std::size_t n);

}  // namespace opcalc
