#include <doctest.h>

#include "opcalc/automorphy.hpp"
#include "opcalc/errors.hpp"
#include "opcalc/expression.hpp"
#include "opcalc/random.hpp"
#include "opcalc/weyl.hpp"
#include "oracles.hpp"

using namespace opcalc;

namespace {

DiffOp D(const char* text, std::size_t n) { return parse_operator(text, n); }
PhaseSymbol S(const char* text, std::size_t n) { return parse_symbol(text, n); }
Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

std::vector<std::pair<DiffOp, DiffOp>> operator_pairs(RandomSource& rng, std::size_t n, std::size_t count,
                                                      const GenBounds& b) {
  std::vector<std::pair<DiffOp, DiffOp>> out;
  for (std::size_t k = 0; k < count; ++k) out.emplace_back(rng.differential_operator(n, b), rng.differential_operator(n, b));
  return out;
}

std::vector<std::pair<DiffOp, DiffOp>> first_order_pairs(RandomSource& rng, std::size_t n, std::size_t count,
                                                         const GenBounds& b) {
  std::vector<std::pair<DiffOp, DiffOp>> out;
  for (std::size_t k = 0; k < count; ++k) out.emplace_back(rng.first_order(n, b), rng.first_order(n, b));
  return out;
}

D1AutoSpec random_d1(RandomSource& rng, std::size_t n) {
  return D1AutoSpec(rng.nonzero_rational(3), rng.coefficient(3), rng.closed_form(n, 3), rng.affine_map(n));
}

}  // namespace

TEST_CASE("spec constructors validate") {
  const OneForm bad({P("x2", 2), Polynomial(2)});
  CHECK_THROWS_AS(D1AutoSpec(0, 0, OneForm::zero(1), AffineMap::identity(1)), DomainError);
  CHECK_THROWS_AS(D1AutoSpec(1, 0, bad, AffineMap::identity(2)), DomainError);
  CHECK_THROWS_AS(DAutoSpec(AffineMap::identity(1), 2, OneForm::zero(1)), DomainError);
  CHECK_THROWS_AS(SAutoSpec(1, AffineMap::identity(2), bad), DomainError);
  CHECK_THROWS(SAutoSpec(1, AffineMap::identity(2), OneForm::zero(3)));
}

TEST_CASE("pushforward examples") {
  const DiffOp d = D("x1^2*d1^2 - 3*d1 + x1", 1);
  CHECK(pushforward(AffineMap::identity(1), d) == d);
  const AffineMap shift = AffineMap::translation({Rational(1)});
  CHECK(pushforward(shift, D("d1", 1)) == D("d1", 1));
  CHECK(pushforward(shift, D("x1", 1)) == D("x1 - 1", 1));
}

TEST_CASE("pushforward matches its defining action") {
  RandomSource rng(401);
  GenBounds b;
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = rng.dimension(b);
    const AffineMap phi = rng.affine_map(n);
    const DiffOp d = rng.differential_operator(n, b);
    const DiffOp pushed = pushforward(phi, d);
    REQUIRE(op_order(pushed) == op_order(d));
    for (const auto& f : oracle::monomials(n, 3))
      REQUIRE(oracle::apply(pushed, f) == oracle::pullback(phi.inverse(), oracle::apply(d, oracle::pullback(phi, f))));
    REQUIRE(total_symbol(pushed) == phase_lift(phi, total_symbol(d)));
  }
}

TEST_CASE("exp_omega examples") {
  const OneForm dx = OneForm::exact(P("x1", 1));
  CHECK(exp_omega(dx, D("d1", 1)) == D("d1 + 1", 1));
  CHECK(exp_omega(OneForm::exact(P("x1^3 - x1", 1)), D("x1^2 + 4", 1)) == D("x1^2 + 4", 1));
  CHECK(exp_omega(dx, D("d1^2", 1)) == D("d1^2 + 2*d1 + 1", 1));
  CHECK_THROWS_AS(exp_omega(OneForm({P("x2", 2), Polynomial(2)}), D("d1", 2)), DomainError);
}

TEST_CASE("exp_omega is conjugation by e^f") {
  // e^{-f} D (e^{f} g) for f = x1^2: ∂1 -> ∂1 + 2x1, ∂1^2 -> (∂1 + 2x1)^2
  const OneForm w = OneForm::exact(P("x1^2", 1));
  const DiffOp shifted = D("d1 + 2*x1", 1);
  CHECK(exp_omega(w, D("d1", 1)) == shifted);
  CHECK(exp_omega(w, D("d1^2", 1)) == compose_ops(shifted, shifted));
  CHECK(exp_omega(w, D("x1*d1^3", 1)) == compose_ops(D("x1", 1), compose_ops(shifted, compose_ops(shifted, shifted))));
}

TEST_CASE("d1_apply examples") {
  const DiffOp fx = D("x1^2 + x1*x2*d1 - 3*d2", 2);
  CHECK(d1_apply(D1AutoSpec::identity(2), fx) == fx);
  const D1AutoSpec branch(-1, 1, OneForm::zero(2), AffineMap::identity(2));
  // -f + div X + X
  CHECK(d1_apply(branch, fx) == D("-x1^2 + x2 + x1*x2*d1 - 3*d2", 2));
  CHECK(d1_apply(branch, fx) == conjugation_C(fx));
  const D1AutoSpec omega(1, 0, OneForm::exact(P("x1^2", 1)), AffineMap::identity(1));
  CHECK(d1_apply(omega, Polynomial(1), D("d1", 1)) == D("d1 + 2*x1", 1));
  CHECK_THROWS_AS(d1_apply(omega, Polynomial(1), D("d1^2", 1)), DomainError);
  CHECK_THROWS_AS(d1_apply(omega, Polynomial(1), D("d1 + 1", 1)), DomainError);
}

TEST_CASE("d_apply examples") {
  RandomSource rng(402);
  GenBounds b;
  const DAutoSpec conj(AffineMap::identity(2), 1, OneForm::zero(2));
  for (int k = 0; k < 20; ++k) {
    const DiffOp d = rng.differential_operator(2, b);
    CHECK(d_apply(DAutoSpec::identity(2), d) == d);
    CHECK(d_apply(conj, d) == conjugation_C(d));
  }
  const DAutoSpec omega(AffineMap::identity(1), 0, OneForm::exact(P("x1", 1)));
  CHECK(d_apply(omega, D("d1^2", 1)) == D("d1^2 + 2*d1 + 1", 1));
}

TEST_CASE("s_apply examples") {
  RandomSource rng(403);
  GenBounds b;
  for (int k = 0; k < 20; ++k) {
    const PhaseSymbol p = rng.symbol(2, b);
    CHECK(s_apply(SAutoSpec::identity(2), p) == p);
  }
  const SAutoSpec scale(Rational(5), AffineMap::identity(1), OneForm::zero(1));
  CHECK(s_apply(scale, S("xi1^2", 1)) == S("1/5*xi1^2", 1));
  const SAutoSpec shift(1, AffineMap::identity(1), OneForm::exact(P("x1^2", 1)));
  CHECK(s_apply(shift, S("xi1", 1)) == S("xi1 + 2*x1", 1));
}

TEST_CASE("branch check: exp_omega and C on first-order operators") {
  RandomSource rng(404);
  GenBounds b;
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = rng.dimension(b);
    const OneForm w = rng.closed_form(n, 3);
    const DiffOp d = rng.first_order(n, b);
    REQUIRE(exp_omega(w, d) == d1_apply(D1AutoSpec(1, 0, w, AffineMap::identity(n)), d));
    REQUIRE(conjugation_C(d) == d1_apply(D1AutoSpec(-1, 1, OneForm::zero(n), AffineMap::identity(n)), d));
  }
}

TEST_CASE("verify_lie_automorphism") {
  RandomSource rng(405);
  GenBounds b;
  b.max_order = 3;
  const auto pairs = operator_pairs(rng, 2, 200, b);
  const auto c = verify_lie_automorphism(LinearMap<DiffOp>(conjugation_C), pairs);
  CHECK(c.pass);
  CHECK(c.cases >= 200);

  const auto doubled = verify_lie_automorphism(LinearMap<DiffOp>([](const DiffOp& d) { return 2 * d; }), pairs);
  CHECK_FALSE(doubled.pass);
  CHECK_FALSE(doubled.failure.empty());

  // killing everything is linear and bracket preserving but not injective
  const auto zero = verify_lie_automorphism(LinearMap<DiffOp>([](const DiffOp& d) { return DiffOp(d.dim()); }), pairs);
  CHECK_FALSE(zero.pass);

  std::vector<std::pair<PhaseSymbol, PhaseSymbol>> sym;
  for (int k = 0; k < 200; ++k) sym.emplace_back(rng.symbol(2, b), rng.symbol(2, b));
  const SAutoSpec u(Rational(3), AffineMap::identity(2), OneForm::zero(2));
  CHECK(verify_lie_automorphism(LinearMap<PhaseSymbol>([&](const PhaseSymbol& p) { return s_apply(u, p); }), sym).pass);
}

TEST_CASE("verify_filtration_respect") {
  RandomSource rng(406);
  const LinearMap<DiffOp> id = [](const DiffOp& d) { return d; };
  CHECK(verify_filtration_respect(id, 1, 4, rng).pass);
  const auto c = verify_filtration_respect(LinearMap<DiffOp>(conjugation_C), -1, 4, rng);
  CHECK(c.pass);
  CHECK(c.convention == "kappa^(1-i)");
  const OneForm dx = OneForm::exact(Polynomial::variable(2, 0));
  CHECK(verify_filtration_respect(LinearMap<DiffOp>([&](const DiffOp& d) { return exp_omega(dx, d); }), 1, 4, rng).pass);
  // wrong scale is caught
  CHECK_FALSE(verify_filtration_respect(id, -1, 4, rng).pass);
  // a general pushforward is checked in its own frame
  FiltrationOptions framed;
  framed.frame = AffineMap({{1, 1}, {0, 2}}, {3, 0});
  const DAutoSpec spec(*framed.frame, 0, OneForm::zero(2));
  CHECK(verify_filtration_respect(LinearMap<DiffOp>([&](const DiffOp& d) { return d_apply(spec, d); }), 1, 4, rng, framed).pass);
}

TEST_CASE("constructed families are Lie automorphisms") {
  RandomSource rng(407);
  GenBounds b;
  b.max_order = 3;
  b.max_degree = 3;
  for (int k = 0; k < 3; ++k) {
    const std::size_t n = 1 + k % 3;
    const D1AutoSpec s1 = random_d1(rng, n);
    const auto p1 = first_order_pairs(rng, n, 30, b);
    REQUIRE(verify_lie_automorphism(LinearMap<DiffOp>([&](const DiffOp& d) { return d1_apply(s1, d); }), p1).pass);

    const DAutoSpec sd(rng.affine_map(n), k % 2, rng.closed_form(n, 3));
    const auto pd = operator_pairs(rng, n, 20, b);
    REQUIRE(verify_lie_automorphism(LinearMap<DiffOp>([&](const DiffOp& d) { return d_apply(sd, d); }), pd).pass);

    const SAutoSpec ss(rng.nonzero_rational(3), rng.affine_map(n), rng.closed_form(n, 3));
    std::vector<std::pair<PhaseSymbol, PhaseSymbol>> ps;
    for (int j = 0; j < 30; ++j) ps.emplace_back(rng.symbol(n, b), rng.symbol(n, b));
    REQUIRE(verify_lie_automorphism(LinearMap<PhaseSymbol>([&](const PhaseSymbol& p) { return s_apply(ss, p); }), ps).pass);
  }
}

TEST_CASE("non-closed translation breaks the bracket") {
  const OneForm bad({P("x2", 2), Polynomial(2)});
  std::vector<std::pair<PhaseSymbol, PhaseSymbol>> ps{{S("xi1", 2), S("xi2", 2)}};
  const auto r = verify_lie_automorphism(
      LinearMap<PhaseSymbol>([&](const PhaseSymbol& p) { return vertical_translation_unchecked(bad, p); }), ps);
  CHECK_FALSE(r.pass);
}

TEST_CASE("group closure on samples") {
  RandomSource rng(408);
  GenBounds b;
  b.max_order = 3;
  const DAutoSpec s1(rng.affine_map(2), 1, rng.closed_form(2, 3));
  const DAutoSpec s2(rng.affine_map(2), 0, rng.closed_form(2, 3));
  const auto pairs = operator_pairs(rng, 2, 20, b);
  const LinearMap<DiffOp> both = [&](const DiffOp& d) { return d_apply(s1, d_apply(s2, d)); };
  CHECK(verify_lie_automorphism(both, pairs).pass);
}

TEST_CASE("extract_d1_params examples") {
  auto black_box = [](const D1AutoSpec& s) { return LinearMap<DiffOp>([s](const DiffOp& d) { return d1_apply(s, d); }); };
  CHECK(extract_d1_params(black_box(D1AutoSpec::identity(2)), 2) == D1AutoSpec::identity(2));
  const D1AutoSpec branch(-1, 1, OneForm::zero(2), AffineMap::identity(2));
  CHECK(extract_d1_params(black_box(branch), 2) == branch);
  const D1AutoSpec full(2, 3, OneForm::exact(P("x1^2", 1)), AffineMap::translation({Rational(-7, 2)}));
  CHECK(extract_d1_params(black_box(full), 1) == full);

  // Φ(1) = x1 is not a constant
  CHECK_THROWS_AS(extract_d1_params(LinearMap<DiffOp>([](const DiffOp& d) { return mult_operator(Side::left, Polynomial::variable(1, 0), d); }), 1),
                  DomainError);
  // D ↦ 2D has κ = 2 but no matching (λ, ω, φ)
  CHECK_THROWS_AS(extract_d1_params(LinearMap<DiffOp>([](const DiffOp& d) { return 2 * d; }), 2), DomainError);
}

TEST_CASE("property: extraction round trips") {
  RandomSource rng(409);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 1 + k % 3;
    const D1AutoSpec s = random_d1(rng, n);
    REQUIRE(extract_d1_params(LinearMap<DiffOp>([&](const DiffOp& d) { return d1_apply(s, d); }), n) == s);
  }
}
