#include "opcalc/expression.hpp"

#include <cctype>
#include <utility>

#include "opcalc/errors.hpp"
#include "opcalc/weyl.hpp"

namespace opcalc {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, Grammar grammar) : text_(text), n_(n), grammar_(grammar) {}

  Expression parse() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Expression expr() {
    Expression sum{.kind = Expression::Kind::sum};
    skip_space();
    const bool leading_minus = accept('-');
    Expression first = term();
    if (leading_minus) first = negate(std::move(first));
    sum.children.push_back(std::move(first));
    while (true) {
      if (accept('+')) {
        sum.children.push_back(term());
      } else if (accept('-')) {
        sum.children.push_back(negate(term()));
      } else {
        break;
      }
    }
    if (sum.children.size() == 1) return std::move(sum.children.front());
    return sum;
  }

  static Expression negate(Expression e) {
    Expression neg{.kind = Expression::Kind::negate};
    neg.children.push_back(std::move(e));
    return neg;
  }

  Expression term() {
    Expression prod{.kind = Expression::Kind::product};
    prod.children.push_back(factor());
    while (accept('*')) prod.children.push_back(factor());
    if (prod.children.size() == 1) return std::move(prod.children.front());
    return prod;
  }

  Expression factor() {
    Expression base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t at = pos_;
    const std::string_view d = digits();
    if (d.empty()) throw ParseError("expected a non-negative integer exponent", at);
    if (d.size() > 4) throw ParseError("exponent too large", at);
    Expression power{.kind = Expression::Kind::power, .exponent = static_cast<unsigned>(std::stoul(std::string(d)))};
    power.children.push_back(std::move(base));
    return power;
  }

  std::size_t variable_index(std::size_t at) {
    const std::string_view d = digits();
    if (d.empty()) throw ParseError("expected a variable index", at);
    const unsigned long i = d.size() > 3 ? 0 : std::stoul(std::string(d));
    if (i < 1 || i > n_)
      throw ParseError("index " + std::string(d) + " out of range 1.." + std::to_string(n_), at);
    return i - 1;
  }

  Expression atom() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", at);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string literal(digits());
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        const std::string_view den = digits();
        if (den.empty()) throw ParseError("expected a denominator", pos_);
        literal += '/';
        literal += den;
      }
      try {
        return Expression{.kind = Expression::Kind::literal, .value = parse_rational(literal)};
      } catch (const DomainError& err) {
        throw ParseError(err.what(), at);
      }
    }
    if (c == 'x' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'i') {
      if (grammar_ != Grammar::symbols) throw ParseError("fiber variables are not allowed in operator text", at);
      pos_ += 2;
      return Expression{.kind = Expression::Kind::fiber, .index = variable_index(at)};
    }
    if (c == 'x') {
      ++pos_;
      return Expression{.kind = Expression::Kind::coordinate, .index = variable_index(at)};
    }
    if (c == 'd') {
      if (grammar_ != Grammar::operators) throw ParseError("derivations are not allowed in symbol text", at);
      ++pos_;
      return Expression{.kind = Expression::Kind::derivation, .index = variable_index(at)};
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", at);
  }

  std::string_view text_;
  std::size_t n_;
  Grammar grammar_;
  std::size_t pos_ = 0;
};

template <class T, class Mul>
T evaluate(const Expression& e, std::size_t n, Mul&& mul) {
  using Kind = Expression::Kind;
  switch (e.kind) {
    case Kind::literal: return T::constant(n, e.value);
    case Kind::coordinate: return T::function(Polynomial::variable(n, e.index));
    case Kind::derivation:
    case Kind::fiber: return T::fiber(n, e.index);
    case Kind::negate: return -evaluate<T>(e.children.front(), n, mul);
    case Kind::sum: {
      T total(n);
      for (const auto& c : e.children) total += evaluate<T>(c, n, mul);
      return total;
    }
    case Kind::product: {
      T prod = evaluate<T>(e.children.front(), n, mul);
      for (std::size_t k = 1; k < e.children.size(); ++k) prod = mul(prod, evaluate<T>(e.children[k], n, mul));
      return prod;
    }
    case Kind::power: {
      const T base = evaluate<T>(e.children.front(), n, mul);
      T prod = T::constant(n, 1);
      for (unsigned k = 0; k < e.exponent; ++k) prod = mul(prod, base);
      return prod;
    }
  }
  throw DomainError("malformed expression");
}

}  // namespace

Expression parse_expression(std::string_view text, std::size_t n, Grammar grammar) {
  if (n < 1 || n > kMaxDim) throw DomainError("dimension must be in 1.." + std::to_string(kMaxDim));
  return Parser(text, n, grammar).parse();
}

DiffOp normalize(const Expression& e, std::size_t n) {
  return evaluate<DiffOp>(e, n, [](const DiffOp& a, const DiffOp& b) { return compose_ops(a, b); });
}

PhaseSymbol normalize_symbol(const Expression& e, std::size_t n) {
  return evaluate<PhaseSymbol>(e, n, [](const PhaseSymbol& a, const PhaseSymbol& b) { return a * b; });
}

Polynomial act(const Expression& e, const Polynomial& f) {
  using Kind = Expression::Kind;
  const std::size_t n = f.dim();
  switch (e.kind) {
    case Kind::literal: return f * e.value;
    case Kind::coordinate: return Polynomial::variable(n, e.index) * f;
    case Kind::derivation: return f.derivative(e.index);
    case Kind::fiber: throw DomainError("fiber variables do not act on functions");
    case Kind::negate: return -act(e.children.front(), f);
    case Kind::sum: {
      Polynomial total(n);
      for (const auto& c : e.children) total += act(c, f);
      return total;
    }
    case Kind::product: {
      Polynomial g = f;
      for (auto it = e.children.rbegin(); it != e.children.rend(); ++it) g = act(*it, g);
      return g;
    }
    case Kind::power: {
      Polynomial g = f;
      for (unsigned k = 0; k < e.exponent; ++k) g = act(e.children.front(), g);
      return g;
    }
  }
  throw DomainError("malformed expression");
}

DiffOp parse_operator(std::string_view text, std::size_t n) {
  return normalize(parse_expression(text, n, Grammar::operators), n);
}

PhaseSymbol parse_symbol(std::string_view text, std::size_t n) {
  return normalize_symbol(parse_expression(text, n, Grammar::symbols), n);
}

Polynomial parse_polynomial(std::string_view text, std::size_t n) {
  const DiffOp d = parse_operator(text, n);
  if (!order_at_most(d.order(), 0)) throw ParseError("expected a function, got an operator of order " + to_string(d.order()), 0);
  return zero_order_part(d);
}

}  // namespace opcalc
