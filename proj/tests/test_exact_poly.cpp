#include <doctest.h>

#include <limits>

#include "opcalc/affine.hpp"
#include "opcalc/errors.hpp"
#include "opcalc/expression.hpp"
#include "opcalc/polynomial.hpp"
#include "opcalc/random.hpp"
#include "oracles.hpp"

using namespace opcalc;

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

}  // namespace

TEST_CASE("rational: canonical form") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(to_string(Rational(6, -4)) == "-3/2");
  CHECK(to_string(Rational(10, 5)) == "2");
  CHECK(Rational(0, -7) == Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  CHECK(parse_rational("-12/8") == Rational(-3, 2));
  CHECK(parse_rational("+5") == Rational(5));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("1.5"), DomainError);
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("rational: overflow promotes and demotes exactly") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  const Rational sq = big * big;
  CHECK(sq.to_mpq() == mpq_class(big.to_mpq() * big.to_mpq()));
  CHECK(sq / big == big);
  CHECK(sq - sq == Rational(0));
  // denominators that overflow on cross multiplication
  const Rational a(1, std::numeric_limits<std::int64_t>::max());
  const Rational b(1, std::numeric_limits<std::int64_t>::max() - 1);
  CHECK((a + b) - b == a);
  CHECK(to_string(rational_pow(Rational(10), 30)) == "1" + std::string(30, '0'));
}

TEST_CASE("poly_arith examples") {
  CHECK(poly_arith(PolyOp::mul, P("x1+1", 1), P("x1-1", 1)) == P("x1^2 - 1", 1));
  CHECK(poly_arith(PolyOp::scale, P("x1*x2", 2), Rational(3)) == P("3*x1*x2", 2));
  CHECK(poly_arith(PolyOp::mul, P("x1+x2", 2), P("x1+x2", 2)) == P("x1^2 + 2*x1*x2 + x2^2", 2));
  CHECK(poly_arith(PolyOp::neg, P("x1 - 2", 1), Polynomial(1)) == P("2 - x1", 1));
  CHECK_THROWS_AS(poly_arith(PolyOp::add, P("x1", 1), P("x1", 2)), DimensionMismatch);
}

TEST_CASE("canonical text is graded lex") {
  CHECK(P("-1/2 + 3*x2*x1^2", 2).to_string() == "3*x1^2*x2 - 1/2");
  CHECK(P("x2 + x1^2 + x1", 2).to_string() == "x1^2 + x1 + x2");
  CHECK(Polynomial(3).to_string() == "0");
  CHECK(P("-x1", 1).to_string() == "-x1");
}

TEST_CASE("zero has no degree") {
  CHECK_FALSE(Polynomial(2).degree().has_value());
  CHECK(Polynomial(2, 5).degree() == 0u);
  CHECK(P("x1^2*x2 + x2", 2).degree() == 3u);
  CHECK((P("x1", 1) - P("x1", 1)).is_zero());
}

TEST_CASE("partial derivatives") {
  CHECK(P("x1^3*x2", 2).derivative(0) == P("3*x1^2*x2", 2));
  CHECK(P("x1", 2).derivative(1).is_zero());
  CHECK(P("x1*x2", 2).derivative(1).derivative(0) == Polynomial(2, 1));
  CHECK_THROWS(P("x1", 2).derivative(std::size_t{2}));
}

TEST_CASE("affine pullback examples") {
  CHECK(affine_pullback(AffineMap::identity(1), P("x1^2", 1)) == P("x1^2", 1));
  CHECK(affine_pullback(AffineMap::translation({1}), P("x1", 1)) == P("x1 + 1", 1));
  CHECK(affine_pullback(AffineMap({{2}}, {0}), P("x1^2", 1)) == P("4*x1^2", 1));
  CHECK_THROWS_AS(AffineMap({{1, 2}, {2, 4}}, {0, 0}), DomainError);
}

TEST_CASE("affine inverse and composition") {
  const AffineMap phi({{2, 1}, {0, Rational(1, 3)}}, {1, -2});
  CHECK(phi.after(phi.inverse()).is_identity());
  CHECK(phi.inverse().after(phi).is_identity());
}

TEST_CASE("closedness") {
  CHECK(is_closed(OneForm({P("x2", 2), P("x1", 2)})));
  CHECK_FALSE(is_closed(OneForm({P("x2", 2), Polynomial(2)})));
  CHECK(is_closed(OneForm::zero(3)));
}

TEST_CASE("poincare potential examples") {
  CHECK(poincare_potential(OneForm({P("x2", 2), P("x1", 2)})) == P("x1*x2", 2));
  CHECK(poincare_potential(OneForm::zero(2)).is_zero());
  const OneForm w({P("2*x1*x2^2", 2), P("2*x1^2*x2", 2)});
  const Polynomial f = poincare_potential(w);
  CHECK(f == P("x1^2*x2^2", 2));
  // gradient check written out by hand
  CHECK(f.derivative(0) == w[0]);
  CHECK(f.derivative(1) == w[1]);
  CHECK_THROWS_AS(poincare_potential(OneForm({P("x2", 2), Polynomial(2)})), DomainError);
}

TEST_CASE("property: ring axioms") {
  RandomSource rng(101);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 3;
    const Polynomial a = rng.polynomial(n, 4, 9, 4);
    const Polynomial b = rng.polynomial(n, 4, 9, 4);
    const Polynomial c = rng.polynomial(n, 3, 9, 4);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) - b == a);
    REQUIRE(a * Polynomial(n, 1) == a);
    // the product on monomials agrees with evaluation at a point
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(Rational(static_cast<long>(k % 5) - 2, 1 + static_cast<long>(i)));
    REQUIRE((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
  }
}

TEST_CASE("property: partials commute") {
  RandomSource rng(102);
  for (int k = 0; k < 200; ++k) {
    const Polynomial p = rng.polynomial(3, 5, 9, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) REQUIRE(p.derivative(i).derivative(j) == p.derivative(j).derivative(i));
  }
}

TEST_CASE("property: pullback along a composite") {
  RandomSource rng(103);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 3;
    const AffineMap phi = rng.affine_map(n);
    const AffineMap psi = rng.affine_map(n);
    const Polynomial p = rng.polynomial(n, 4, 9, 3);
    REQUIRE(affine_pullback(phi, p) == oracle::pullback(phi, p));
    REQUIRE(affine_pullback(phi.after(psi), p) == affine_pullback(psi, affine_pullback(phi, p)));
  }
}

TEST_CASE("property: potential of df") {
  RandomSource rng(104);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 3;
    const Polynomial f = rng.polynomial(n, 5, 9, 4);
    const OneForm w = OneForm::exact(f);
    REQUIRE(is_closed(w));
    const Polynomial g = poincare_potential(w);
    REQUIRE((f - g).is_constant());
    for (std::size_t i = 0; i < n; ++i) REQUIRE(g.derivative(i) == w[i]);
    REQUIRE(g.constant_term() == Rational(0));
  }
}
