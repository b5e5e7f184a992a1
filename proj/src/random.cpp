#include "opcalc/random.hpp"

#include <algorithm>
#include <vector>

namespace opcalc {

int RandomSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

std::size_t RandomSource::dimension(const GenBounds& bounds) {
  return static_cast<std::size_t>(uniform(1, static_cast<int>(bounds.max_dim)));
}

Rational RandomSource::coefficient(int bound) { return uniform(-bound, bound); }

Rational RandomSource::nonzero_rational(int bound) {
  int v = 0;
  while (v == 0) v = uniform(-bound, bound);
  const int den = uniform(1, 3);
  return Rational(v, den);
}

MultiIndex RandomSource::multi_index(std::size_t n, unsigned total) {
  MultiIndex alpha(n);
  for (unsigned k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
    alpha.set(i, alpha[i] + 1);
  }
  return alpha;
}

MultiIndex RandomSource::multi_index_up_to(std::size_t n, unsigned max_total) {
  return multi_index(n, static_cast<unsigned>(uniform(0, static_cast<int>(max_total))));
}

Polynomial RandomSource::polynomial(std::size_t n, unsigned max_degree, int coeff_bound, unsigned max_terms) {
  Polynomial p(n);
  while (p.is_zero()) {
    const int terms = uniform(1, static_cast<int>(std::max(1U, max_terms)));
    for (int t = 0; t < terms; ++t) p.add_term(multi_index_up_to(n, max_degree), coefficient(coeff_bound));
  }
  return p;
}

Polynomial RandomSource::dense_polynomial(std::size_t n, unsigned degree, int coeff_bound) {
  MultiIndex box(n);
  for (std::size_t i = 0; i < n; ++i) box.set(i, degree);
  Polynomial p(n);
  for_each_divisor(box, [&](const MultiIndex& alpha) {
    if (alpha.total() > degree) return;
    int c = 0;
    while (c == 0) c = uniform(-coeff_bound, coeff_bound);
    p.add_term(alpha, c);
  });
  return p;
}

DiffOp RandomSource::operator_of_order(std::size_t n, unsigned order, const GenBounds& bounds) {
  DiffOp d(n);
  while (d.order() != OrderValue(order)) {
    d = DiffOp(n);
    d.add_term(multi_index(n, order), polynomial(n, bounds.max_degree, bounds.coeff_bound, bounds.max_terms));
    const int extra = uniform(0, static_cast<int>(bounds.max_terms) - 1);
    for (int t = 0; t < extra; ++t)
      d.add_term(multi_index_up_to(n, order), polynomial(n, bounds.max_degree, bounds.coeff_bound, bounds.max_terms));
  }
  return d;
}

DiffOp RandomSource::differential_operator(std::size_t n, const GenBounds& bounds) {
  return operator_of_order(n, static_cast<unsigned>(uniform(0, static_cast<int>(bounds.max_order))), bounds);
}

DiffOp RandomSource::vector_field(std::size_t n, const GenBounds& bounds) {
  DiffOp x(n);
  while (x.is_zero())
    for (std::size_t i = 0; i < n; ++i)
      if (uniform(0, 2) != 0)
        x.add_term(MultiIndex::unit(n, i), polynomial(n, bounds.max_degree, bounds.coeff_bound, bounds.max_terms));
  return x;
}

DiffOp RandomSource::first_order(std::size_t n, const GenBounds& bounds) {
  DiffOp d = vector_field(n, bounds);
  if (uniform(0, 3) != 0)
    d += DiffOp::function(polynomial(n, bounds.max_degree, bounds.coeff_bound, bounds.max_terms));
  return d;
}

PhaseSymbol RandomSource::symbol_of_grade(std::size_t n, unsigned grade, const GenBounds& bounds) {
  return total_symbol(operator_of_order(n, grade, bounds));
}

PhaseSymbol RandomSource::symbol(std::size_t n, const GenBounds& bounds) {
  return total_symbol(differential_operator(n, bounds));
}

AffineMap RandomSource::affine_map(std::size_t n) {
  while (true) {
    RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // Sparse off-diagonal entries keep pushed-forward coefficients small.
        if (i == j)
          m[i][j] = nonzero_rational(2);
        else if (uniform(0, 2) == 0)
          m[i][j] = uniform(-2, 2);
      }
    std::vector<Rational> b(n);
    for (auto& v : b) v = uniform(-3, 3);
    if (determinant(m) != 0) return AffineMap(std::move(m), std::move(b));
  }
}

OneForm RandomSource::closed_form(std::size_t n, unsigned max_degree) {
  if (uniform(0, 5) == 0) return OneForm::zero(n);
  return OneForm::exact(polynomial(n, max_degree, 5, 2));
}

Expression RandomSource::expression(std::size_t n, unsigned depth) {
  using Kind = Expression::Kind;
  const int pick = depth == 0 ? uniform(0, 2) : uniform(0, 6);
  const auto index = [&] { return static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1)); };
  switch (pick) {
    case 0: {
      return Expression{.kind = Kind::literal, .value = Rational(uniform(0, 9), uniform(1, 3))};
    }
    case 1: return Expression{.kind = Kind::coordinate, .index = index()};
    case 2: return Expression{.kind = Kind::derivation, .index = index()};
    case 3:
    case 4: {
      Expression e{.kind = pick == 3 ? Kind::sum : Kind::product};
      const int parts = uniform(2, 3);
      for (int k = 0; k < parts; ++k) e.children.push_back(expression(n, depth - 1));
      return e;
    }
    case 5: {
      Expression e{.kind = Kind::power, .exponent = static_cast<unsigned>(uniform(0, 2))};
      e.children.push_back(expression(n, depth - 1));
      return e;
    }
    default: {
      Expression e{.kind = Kind::negate};
      e.children.push_back(expression(n, depth - 1));
      return e;
    }
  }
}

}  // namespace opcalc
