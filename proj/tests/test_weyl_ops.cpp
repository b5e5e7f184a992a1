#include <doctest.h>

#include "opcalc/errors.hpp"
#include "opcalc/expression.hpp"
#include "opcalc/random.hpp"
#include "opcalc/weyl.hpp"
#include "oracles.hpp"

using namespace opcalc;

namespace {

DiffOp D(const char* text, std::size_t n) { return parse_operator(text, n); }
Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

std::vector<Polynomial> coordinates(std::size_t n) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Polynomial::variable(n, i));
  return out;
}

// coordinates plus five dense cubics
std::vector<Polynomial> wide_probes(std::size_t n, RandomSource& rng) {
  auto probes = coordinates(n);
  for (int k = 0; k < 5; ++k) probes.push_back(rng.dense_polynomial(n, 3, 9));
  return probes;
}

}  // namespace

TEST_CASE("apply examples") {
  CHECK(apply_op(D("x1*d1", 1), P("x1^2", 1)) == P("2*x1^2", 1));
  CHECK(oracle::apply(D("x1*d1", 1), P("x1^2", 1)) == P("2*x1^2", 1));
  CHECK(apply_op(D("d1^2", 1), P("x1^3", 1)) == P("6*x1", 1));
  const Polynomial f = P("x1^2*x2 - 3*x2 + 1/2", 2);
  CHECK(apply_op(DiffOp::constant(2, 1), f) == f);
  CHECK_THROWS_AS(apply_op(D("d1", 1), f), DimensionMismatch);
}

TEST_CASE("compose examples") {
  const DiffOp a = compose_ops(D("d1", 1), DiffOp::function(P("x1", 1)));
  CHECK(a.to_string() == "x1*d1 + 1");
  CHECK(oracle::same_action(a, D("x1*d1 + 1", 1), 3));
  CHECK(compose_ops(D("d1", 2), D("d2", 2)) == D("d1*d2", 2));
  const DiffOp b = compose_ops(D("x1*d1", 1), D("x1*d1", 1));
  CHECK(b.to_string() == "x1^2*d1^2 + x1*d1");
  // oracle: apply twice
  for (const auto& m : oracle::monomials(1, 3))
    CHECK(oracle::apply(b, m) == oracle::apply(D("x1*d1", 1), oracle::apply(D("x1*d1", 1), m)));
}

TEST_CASE("commutator examples") {
  CHECK(commutator(D("d1", 1), D("x1", 1)) == DiffOp::constant(1, 1));
  CHECK(commutator(D("x1*d1", 1), D("d1", 1)) == D("-d1", 1));
  CHECK(commutator(D("d1^2", 1), D("x1", 1)) == D("2*d1", 1));
  for (const auto& m : oracle::monomials(1, 4)) {
    const DiffOp d = D("d1^2", 1);
    const DiffOp x = D("x1", 1);
    CHECK(oracle::apply(D("2*d1", 1), m) == oracle::apply(d, oracle::apply(x, m)) - oracle::apply(x, oracle::apply(d, m)));
  }
}

TEST_CASE("order examples") {
  CHECK(op_order(D("x1^2*d1*d2 + d3", 3)) == 2u);
  CHECK(op_order(D("x1^2 + 1", 1)) == 0u);
  CHECK_FALSE(op_order(DiffOp(2)).has_value());
  CHECK(to_string(op_order(DiffOp(2))) == "none");
  CHECK(order_at_most(op_order(DiffOp(2)), -1));
}

TEST_CASE("grothendieck examples") {
  const auto probes = coordinates(2);
  CHECK(grothendieck_member(D("d1", 2), 1, probes));
  CHECK_FALSE(grothendieck_member(D("d1", 2), 0, probes));
  CHECK(grothendieck_member(D("x1", 2), 0, probes));
  CHECK_FALSE(grothendieck_member(D("d1^2", 2), 1, probes));
  CHECK(grothendieck_member(D("d1^2", 2), 2, probes));
  CHECK(grothendieck_member(DiffOp(2), -1, probes));
  CHECK_FALSE(grothendieck_member(D("x1", 2), -1, probes));
}

TEST_CASE("adjoint and conjugation examples") {
  CHECK(formal_adjoint(D("d1", 1)) == D("-d1", 1));
  CHECK(formal_adjoint(D("x1^2 + 3", 1)) == D("x1^2 + 3", 1));
  CHECK(formal_adjoint(D("x1*d1", 1)).to_string() == "-x1*d1 - 1");
  CHECK(conjugation_C(D("d1", 1)) == D("d1", 1));
  CHECK(conjugation_C(D("x1^2", 1)) == D("-x1^2", 1));
  CHECK(conjugation_C(D("x1*d1", 1)).to_string() == "x1*d1 + 1");
}

TEST_CASE("adjoint agrees with integration by parts on monomials") {
  // D*(g) = Σ (-1)^|α| ∂^α(a_α g), computed with the naive oracle
  const DiffOp d = D("x1^2*d1^2 + 3*x2*d1*d2 - x1*d2 + 5", 2);
  DiffOp star = formal_adjoint(d);
  for (const auto& g : oracle::monomials(2, 3)) {
    Polynomial want(2);
    for (const auto& [alpha, a] : d.terms()) {
      DiffOp pure(2);
      pure.add_term(alpha, Polynomial(2, alpha.total() % 2 ? -1 : 1));
      want += oracle::apply(pure, a * g);
    }
    CHECK(oracle::apply(star, g) == want);
  }
}

TEST_CASE("nilpotency examples") {
  CHECK(ad_nilpotency_witness(D("d1", 1), P("x1^3", 1), 10) == 4);
  CHECK_FALSE(ad_nilpotency_witness(D("x1*d1", 1), P("x1", 1), 20).has_value());
  CHECK(ad_nilpotency_witness(D("x1^2 + 1", 1), P("x1^5", 1), 3) == 1);
  CHECK(ad_nilpotency_witness(D("d1", 1), P("x1^3", 1), 3) == std::nullopt);
}

TEST_CASE("divergence examples") {
  CHECK(divergence(D("x1*d1", 1)) == Polynomial(1, 1));
  CHECK(divergence(D("d1", 1)).is_zero());
  CHECK(divergence(D("x2*d1 + x1*d2", 2)).is_zero());
  CHECK_THROWS_AS(divergence(D("d1 + 1", 1)), DomainError);
  CHECK_THROWS_AS(divergence(D("d1^2", 1)), DomainError);
}

TEST_CASE("multiplication operators") {
  const Polynomial x = P("x1", 1);
  CHECK(mult_operator(Side::left, x, D("d1", 1)) == D("x1*d1", 1));
  CHECK(mult_operator(Side::right, x, D("d1", 1)) == D("x1*d1 + 1", 1));
  CHECK(mult_operator(Side::left, x, D("d1", 1)) - mult_operator(Side::right, x, D("d1", 1)) ==
        commutator(DiffOp::function(x), D("d1", 1)));
  CHECK(commutator(DiffOp::function(x), D("d1", 1)) == DiffOp::constant(1, -1));
}

TEST_CASE("property: filtration law and bilinearity") {
  RandomSource rng(201);
  GenBounds b;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = rng.dimension(b);
    const DiffOp d = rng.differential_operator(n, b);
    const DiffOp e = rng.differential_operator(n, b);
    const DiffOp f = rng.differential_operator(n, b);
    const DiffOp de = commutator(d, e);
    REQUIRE(order_at_most(op_order(de), static_cast<long>(*op_order(d) + *op_order(e)) - 1));
    REQUIRE(order_at_most(op_order(compose_ops(d, e)), static_cast<long>(*op_order(d) + *op_order(e))));
    REQUIRE(commutator(d, e) == -commutator(e, d));
    REQUIRE(commutator(d + 2 * e, f) == commutator(d, f) + 2 * commutator(e, f));
    const DiffOp jacobi = commutator(d, commutator(e, f)) + commutator(e, commutator(f, d)) + commutator(f, commutator(d, e));
    REQUIRE(jacobi.is_zero());
  }
}

TEST_CASE("property: composition matches the action oracle") {
  RandomSource rng(202);
  GenBounds b;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng.dimension(b);
    const DiffOp d = rng.differential_operator(n, b);
    const DiffOp e = rng.differential_operator(n, b);
    const Polynomial f = rng.polynomial(n, 6, 9, 4);
    REQUIRE(apply_op(d, f) == oracle::apply(d, f));
    REQUIRE(apply_op(compose_ops(d, e), f) == oracle::apply(d, oracle::apply(e, f)));
  }
}

TEST_CASE("property: grothendieck level equals order") {
  RandomSource rng(203);
  GenBounds b;
  b.max_order = 3;
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = rng.dimension(b);
    const DiffOp d = rng.differential_operator(n, b);
    const auto probes = wide_probes(n, rng);
    const int ord = static_cast<int>(*op_order(d));
    for (int i = -1; i <= 4; ++i) REQUIRE(grothendieck_member(d, i, probes) == (i >= ord));
  }
}

TEST_CASE("property: adjoint laws") {
  RandomSource rng(204);
  GenBounds b;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng.dimension(b);
    const DiffOp d = rng.differential_operator(n, b);
    const DiffOp e = rng.differential_operator(n, b);
    REQUIRE(formal_adjoint(compose_ops(d, e)) == compose_ops(formal_adjoint(e), formal_adjoint(d)));
    REQUIRE(formal_adjoint(formal_adjoint(d)) == d);
    REQUIRE(conjugation_C(conjugation_C(d)) == d);
    REQUIRE(conjugation_C(commutator(d, e)) == commutator(conjugation_C(d), conjugation_C(e)));
  }
}

TEST_CASE("property: centralizer") {
  RandomSource rng(205);
  GenBounds b;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng.dimension(b);
    const Polynomial f = rng.polynomial(n, 3, 9, 3);
    const Polynomial g = rng.polynomial(n, 3, 9, 3);
    const DiffOp d = rng.differential_operator(n, b);
    const DiffOp mg = DiffOp::function(g);
    REQUIRE(mult_operator(Side::left, f, d) - mult_operator(Side::right, f, d) == commutator(DiffOp::function(f), d));
    REQUIRE(mult_operator(Side::left, f, commutator(mg, d)) == commutator(mg, mult_operator(Side::left, f, d)));
    REQUIRE(mult_operator(Side::right, f, commutator(mg, d)) == commutator(mg, mult_operator(Side::right, f, d)));
  }
}

TEST_CASE("property: divergence cocycle") {
  RandomSource rng(206);
  GenBounds b;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng.dimension(b);
    const DiffOp x = rng.vector_field(n, b);
    const DiffOp y = rng.vector_field(n, b);
    const DiffOp xy = commutator(x, y);
    REQUIRE((xy.is_zero() || is_vector_field(xy)));
    const Polynomial lhs = xy.is_zero() ? Polynomial(n) : divergence(xy);
    REQUIRE(lhs == apply_op(x, divergence(y)) - apply_op(y, divergence(x)));
  }
}
