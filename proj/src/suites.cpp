#include "opcalc/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <utility>

#include "opcalc/automorphy.hpp"
#include "opcalc/errors.hpp"
#include "opcalc/expression.hpp"
#include "opcalc/phase_symbol.hpp"
#include "opcalc/spec_io.hpp"
#include "opcalc/weyl.hpp"

namespace opcalc {

namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

class Context {
 public:
  Context(const SuiteConfig& config, std::size_t suite_index)
      : config(config), rng(config.seed * 1000003ULL + suite_index) {}

  void check(bool ok, std::string_view what, const std::function<std::string()>& detail) {
    ++report.cases;
    if (ok) return;
    if (report.failures.size() < kMaxRecordedFailures) report.failures.push_back(std::string(what) + ": " + detail());
  }
  void fail(std::string_view what, const std::string& detail) { check(false, what, [&] { return detail; }); }

  std::size_t dim() { return rng.dimension(config.bounds); }

  const SuiteConfig& config;
  RandomSource rng;
  SuiteReport report;
};

std::string pair_text(const DiffOp& d, const DiffOp& e) { return "D = " + d.to_string() + ", E = " + e.to_string(); }

void filtration_suite(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.pairs; ++k) {
    const std::size_t n = ctx.dim();
    const DiffOp d = ctx.rng.differential_operator(n, ctx.config.bounds);
    const DiffOp e = ctx.rng.differential_operator(n, ctx.config.bounds);
    const long bound = static_cast<long>(*d.order() + *e.order()) - 1;
    ctx.check(order_at_most(commutator(d, e).order(), bound), "order([D,E]) <= order(D)+order(E)-1",
              [&] { return pair_text(d, e); });
  }
}

void symbol_compat_suite(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.pairs; ++k) {
    const std::size_t n = ctx.dim();
    const DiffOp d = ctx.rng.differential_operator(n, ctx.config.bounds);
    const DiffOp e = ctx.rng.differential_operator(n, ctx.config.bounds);
    const unsigned d1 = *d.order();
    const unsigned d2 = *e.order();
    const PhaseSymbol sd = principal_symbol(d);
    const PhaseSymbol se = principal_symbol(e);
    const DiffOp br = commutator(d, e);
    // σ_{d1+d2-1} is defined on operators of order ≤ d1+d2-1; order 0 pairs bracket to zero.
    const PhaseSymbol bracket_symbol =
        d1 + d2 == 0 ? PhaseSymbol(n) : principal_symbol(br, d1 + d2 - 1);
    ctx.check(poisson_bracket(sd, se) == bracket_symbol, "{sigma(D),sigma(E)} = sigma_{d1+d2-1}([D,E])",
              [&] { return pair_text(d, e); });
    ctx.check(sd * se == principal_symbol(compose_ops(d, e), d1 + d2), "sigma(D)sigma(E) = sigma_{d1+d2}(DE)",
              [&] { return pair_text(d, e); });
  }
}

std::vector<Polynomial> grothendieck_probes(RandomSource& rng, std::size_t n) {
  std::vector<Polynomial> probes;
  for (std::size_t i = 0; i < n; ++i) probes.push_back(Polynomial::variable(n, i));
  for (int k = 0; k < 5; ++k) probes.push_back(rng.dense_polynomial(n, 3, 9));
  return probes;
}

void grothendieck_suite(Context& ctx) {
  GenBounds bounds = ctx.config.bounds;
  bounds.max_order = std::min(bounds.max_order, 3U);
  for (std::size_t k = 0; k < ctx.config.samples; ++k) {
    const std::size_t n = ctx.dim();
    const DiffOp d = ctx.rng.differential_operator(n, bounds);
    const auto probes = grothendieck_probes(ctx.rng, n);
    const int order = static_cast<int>(*d.order());
    for (int level = -1; level <= order + 1; ++level)
      ctx.check(grothendieck_member(d, level, probes) == (level >= order), "grothendieck_member(D,i) <=> i >= order(D)",
                [&] { return "D = " + d.to_string() + ", i = " + std::to_string(level); });
  }
}

void nilpotency_suite(Context& ctx) {
  const DiffOp d1 = DiffOp::fiber(1, 0);
  for (unsigned deg = 0; deg <= 6; ++deg) {
    MultiIndex alpha(1);
    alpha.set(0, deg);
    const Polynomial f = Polynomial::monomial(alpha);
    const auto w = ad_nilpotency_witness(d1, f, 8);
    ctx.check(w == std::optional<int>(static_cast<int>(deg) + 1), "witness(d1, x1^k, 8) = k+1",
              [&] { return "f = " + f.to_string() + ", got " + (w ? std::to_string(*w) : std::string("none")); });
  }
  const DiffOp euler = compose_ops(DiffOp::function(Polynomial::variable(1, 0)), d1);
  ctx.check(!ad_nilpotency_witness(euler, Polynomial::variable(1, 0), 20), "witness(x1*d1, x1, 20) = none",
            [] { return std::string("a witness was found"); });
  for (std::size_t k = 0; k < ctx.config.samples / 4; ++k) {
    const std::size_t n = ctx.dim();
    const Polynomial g = ctx.rng.polynomial(n, ctx.config.bounds.max_degree, ctx.config.bounds.coeff_bound, 3);
    const Polynomial f = ctx.rng.polynomial(n, ctx.config.bounds.max_degree, ctx.config.bounds.coeff_bound, 3);
    ctx.check(ad_nilpotency_witness(DiffOp::function(g), f) == 1, "functions commute",
              [&] { return "g = " + g.to_string() + ", f = " + f.to_string(); });
    // Constant-coefficient fields are locally nilpotent on polynomials: witness = deg f + 1.
    const DiffOp field = DiffOp::fiber(n, static_cast<std::size_t>(ctx.rng.uniform(0, static_cast<int>(n) - 1)));
    ctx.check(ad_nilpotency_witness(field, f, 32).has_value(), "constant fields are ad-nilpotent on functions",
              [&] { return "D = " + field.to_string() + ", f = " + f.to_string(); });
  }
}

void centralizer_suite(Context& ctx) {
  const DiffOp one = DiffOp::constant(1, 1);
  ctx.check(commutator(DiffOp::fiber(1, 0), DiffOp::function(Polynomial::variable(1, 0))) == one,
            "[d1, x1] = 1", [] { return std::string("non-singularity witness failed"); });
  for (std::size_t k = 0; k < ctx.config.samples; ++k) {
    const std::size_t n = ctx.dim();
    const auto& b = ctx.config.bounds;
    const Polynomial f = ctx.rng.polynomial(n, b.max_degree, b.coeff_bound, b.max_terms);
    const Polynomial g = ctx.rng.polynomial(n, b.max_degree, b.coeff_bound, b.max_terms);
    const DiffOp d = ctx.rng.differential_operator(n, b);
    const DiffOp mf = DiffOp::function(f);
    const DiffOp mg = DiffOp::function(g);
    auto text = [&] { return "f = " + f.to_string() + ", g = " + g.to_string() + ", D = " + d.to_string(); };
    ctx.check(mult_operator(Side::left, f, d) - mult_operator(Side::right, f, d) == commutator(mf, d),
              "(l_f - r_f)(D) = [m_f, D]", text);
    ctx.check(mult_operator(Side::left, f, commutator(mg, d)) == commutator(mg, mult_operator(Side::left, f, d)),
              "l_f ad_g = ad_g l_f", text);
    ctx.check(mult_operator(Side::right, f, commutator(mg, d)) == commutator(mg, mult_operator(Side::right, f, d)),
              "r_f ad_g = ad_g r_f", text);
  }
}

void adjoint_suite(Context& ctx) {
  const auto& b = ctx.config.bounds;
  std::map<std::size_t, std::vector<std::pair<DiffOp, DiffOp>>> by_dim;
  for (std::size_t k = 0; k < ctx.config.samples; ++k) {
    const std::size_t n = ctx.dim();
    const DiffOp d = ctx.rng.differential_operator(n, b);
    const DiffOp e = ctx.rng.differential_operator(n, b);
    auto text = [&] { return pair_text(d, e); };
    ctx.check(formal_adjoint(compose_ops(d, e)) == compose_ops(formal_adjoint(e), formal_adjoint(d)),
              "(DE)* = E*D*", text);
    ctx.check(formal_adjoint(formal_adjoint(d)) == d, "(D*)* = D", text);
    ctx.check(conjugation_C(conjugation_C(d)) == d, "C C = id", text);
    ctx.check(conjugation_C(commutator(d, e)) == commutator(conjugation_C(d), conjugation_C(e)),
              "C[D,E] = [CD,CE]", text);
    const DiffOp first = ctx.rng.first_order(n, b);
    ctx.check(conjugation_C(first) == d1_apply(D1AutoSpec(-1, 1, OneForm::zero(n), AffineMap::identity(n)), first),
              "C on first order = d1(-1,1,0,id)", [&] { return "D = " + first.to_string(); });
    by_dim[n].emplace_back(d, e);
  }
  for (const auto& [n, pairs] : by_dim) {
    const auto r = verify_lie_automorphism(LinearMap<DiffOp>(conjugation_C), pairs);
    ctx.check(r.pass, "C is a Lie automorphism", [&] { return r.failure; });
  }
}

void cocycle_suite(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.samples; ++k) {
    const std::size_t n = ctx.dim();
    const DiffOp x = ctx.rng.vector_field(n, ctx.config.bounds);
    const DiffOp y = ctx.rng.vector_field(n, ctx.config.bounds);
    ctx.check(divergence(commutator(x, y)) == apply_op(x, divergence(y)) - apply_op(y, divergence(x)),
              "div[X,Y] = X(div Y) - Y(div X)", [&] { return "X = " + x.to_string() + ", Y = " + y.to_string(); });
  }
}

std::string format_spec_inline(const D1AutoSpec& spec) {
  std::string text = format_auto_spec(spec);
  std::replace(text.begin(), text.end(), '\n', ';');
  return text;
}

/// Spec parameters stay small so that automorphism images remain desk-sized.
constexpr unsigned kPotentialDegree = 3;

void aut_d1_suite(Context& ctx) {
  const auto& b = ctx.config.bounds;
  for (std::size_t s = 0; s < ctx.config.d1_specs; ++s) {
    const std::size_t n = ctx.dim();
    const D1AutoSpec spec(ctx.rng.nonzero_rational(5), ctx.rng.coefficient(5), ctx.rng.closed_form(n, kPotentialDegree),
                          ctx.rng.affine_map(n));
    const LinearMap<DiffOp> phi = [&spec](const DiffOp& d) { return d1_apply(spec, d); };
    std::vector<std::pair<DiffOp, DiffOp>> pairs;
    for (std::size_t k = 0; k < ctx.config.auto_pairs; ++k)
      pairs.emplace_back(ctx.rng.first_order(n, b), ctx.rng.first_order(n, b));
    const auto r = verify_lie_automorphism(phi, pairs);
    ctx.check(r.pass, "d1_apply is a Lie automorphism", [&] { return r.failure; });
    try {
      const D1AutoSpec back = extract_d1_params(phi, n);
      ctx.check(back == spec, "extract_d1_params round trip",
                [&] { return format_spec_inline(spec) + " came back as " + format_spec_inline(back); });
    } catch (const Error& e) {
      ctx.fail("extract_d1_params round trip", format_spec_inline(spec) + ": " + e.what());
    }
    // exp_omega on first-order operators is the (κ,λ) = (1,0) branch.
    const D1AutoSpec branch(1, 0, spec.omega, AffineMap::identity(n));
    for (std::size_t k = 0; k < 10; ++k) {
      const DiffOp d = pairs[k % pairs.size()].first;
      ctx.check(exp_omega(spec.omega, d) == d1_apply(branch, d), "exp_omega on first order = d1(1,0,omega,id)",
                [&] { return "D = " + d.to_string(); });
    }
  }
}

void aut_d_suite(Context& ctx) {
  GenBounds b = ctx.config.bounds;
  for (std::size_t s = 0; s < ctx.config.d_specs; ++s) {
    const std::size_t n = ctx.dim();
    const DAutoSpec spec(ctx.rng.affine_map(n), ctx.rng.uniform(0, 1), ctx.rng.closed_form(n, kPotentialDegree));
    const LinearMap<DiffOp> phi = [&spec](const DiffOp& d) { return d_apply(spec, d); };
    std::vector<std::pair<DiffOp, DiffOp>> pairs;
    for (std::size_t k = 0; k < ctx.config.auto_pairs; ++k)
      pairs.emplace_back(ctx.rng.differential_operator(n, b), ctx.rng.differential_operator(n, b));
    const auto r = verify_lie_automorphism(phi, pairs);
    ctx.check(r.pass, "d_apply is a Lie automorphism", [&] { return r.failure; });

    const Rational kappa = spec.a == 1 ? -1 : 1;
    FiltrationOptions opts{.dim = n, .samples_per_order = 5, .bounds = b, .frame = spec.phi};
    const auto fr = verify_filtration_respect(phi, kappa, b.max_order, ctx.rng, opts);
    ctx.check(fr.pass, "d_apply respects the filtration with kappa = (-1)^a", [&] { return fr.failure; });

    const AffineMap inv = spec.phi.inverse();
    for (std::size_t k = 0; k < 10; ++k) {
      const Polynomial f = ctx.rng.polynomial(n, b.max_degree, b.coeff_bound, b.max_terms);
      ctx.check(phi(DiffOp::function(f)) == DiffOp::function(kappa * affine_pullback(inv, f)),
                "d_apply on functions = (-1)^a f o phi^-1", [&] { return "f = " + f.to_string(); });
      const DiffOp d = pairs[k].first;
      ctx.check(total_symbol(pushforward(spec.phi, d)) == phase_lift(spec.phi, total_symbol(d)),
                "symbol(phi_* D) = phase_lift(symbol(D))", [&] { return "D = " + d.to_string(); });
    }
  }
  // Group closure: composites of two instances are again automorphisms.
  for (std::size_t s = 0; s < ctx.config.d_specs / 2; ++s) {
    const std::size_t n = ctx.dim();
    const DAutoSpec first(ctx.rng.affine_map(n), ctx.rng.uniform(0, 1), ctx.rng.closed_form(n, 2));
    const DAutoSpec second(ctx.rng.affine_map(n), ctx.rng.uniform(0, 1), ctx.rng.closed_form(n, 2));
    const LinearMap<DiffOp> composite = [&](const DiffOp& d) { return d_apply(second, d_apply(first, d)); };
    std::vector<std::pair<DiffOp, DiffOp>> pairs;
    for (std::size_t k = 0; k < ctx.config.auto_pairs / 4; ++k)
      pairs.emplace_back(ctx.rng.differential_operator(n, b), ctx.rng.differential_operator(n, b));
    const auto r = verify_lie_automorphism(composite, pairs);
    ctx.check(r.pass, "composite of two d_apply instances is a Lie automorphism", [&] { return r.failure; });
  }
}

void aut_s_suite(Context& ctx) {
  const auto& b = ctx.config.bounds;
  for (std::size_t s = 0; s < ctx.config.s_specs; ++s) {
    const std::size_t n = ctx.dim();
    const SAutoSpec spec(ctx.rng.nonzero_rational(5), ctx.rng.affine_map(n), ctx.rng.closed_form(n, kPotentialDegree));
    const LinearMap<PhaseSymbol> phi = [&spec](const PhaseSymbol& p) { return s_apply(spec, p); };
    std::vector<std::pair<PhaseSymbol, PhaseSymbol>> pairs;
    for (std::size_t k = 0; k < ctx.config.auto_pairs; ++k)
      pairs.emplace_back(ctx.rng.symbol(n, b), ctx.rng.symbol(n, b));
    const auto r = verify_lie_automorphism(phi, pairs);
    ctx.check(r.pass, "s_apply is a Poisson automorphism", [&] { return r.failure; });
  }
  // Negative control: translating by a non-closed form breaks the bracket.
  {
    const std::size_t n = 2;
    const OneForm bad({Polynomial::variable(n, 1), Polynomial(n)});
    const LinearMap<PhaseSymbol> phi = [&bad](const PhaseSymbol& p) { return vertical_translation_unchecked(bad, p); };
    std::vector<std::pair<PhaseSymbol, PhaseSymbol>> pairs{{PhaseSymbol::fiber(n, 0), PhaseSymbol::fiber(n, 1)}};
    for (std::size_t k = 0; k < 20; ++k) pairs.emplace_back(ctx.rng.symbol(n, b), ctx.rng.symbol(n, b));
    const auto r = verify_lie_automorphism(phi, pairs);
    ctx.check(!r.pass, "non-closed omega breaks bracket preservation",
              [] { return std::string("translation by (x2, 0) preserved every sampled bracket"); });
  }
  for (std::size_t k = 0; k < ctx.config.samples; ++k) {
    const std::size_t n = ctx.dim();
    const PhaseSymbol p = ctx.rng.symbol(n, b);
    const PhaseSymbol q = ctx.rng.symbol(n, b);
    const auto deg = [](const PhaseSymbol& s) { return degree_map(DegreeMap::derivation, s); };
    ctx.check(deg(poisson_bracket(p, q)) == poisson_bracket(deg(p), q) + poisson_bracket(p, deg(q)),
              "deg is a derivation of the bracket", [&] { return "P = " + p.to_string() + ", Q = " + q.to_string(); });
  }
  {
    const std::size_t n = 2;
    const PhaseSymbol p = PhaseSymbol::fiber(n, 0);
    const PhaseSymbol q = PhaseSymbol::fiber(n, 1);
    const auto u = [](const PhaseSymbol& s) { return degree_map(DegreeMap::u_kappa, s, 2); };
    ctx.check(u(p * q) != u(p) * u(q), "U_2 is not multiplicative on S1 x S1",
              [] { return std::string("U_2(xi1*xi2) = U_2(xi1)*U_2(xi2)"); });
  }
}

void roundtrip_suite(Context& ctx) {
  const auto& b = ctx.config.bounds;
  for (std::size_t k = 0; k < ctx.config.samples; ++k) {
    const std::size_t n = ctx.dim();
    const DiffOp d = ctx.rng.differential_operator(n, b);
    const PhaseSymbol p = ctx.rng.symbol(n, b);
    ctx.check(quantize(total_symbol(d)) == d, "quantize o symbol = id", [&] { return "D = " + d.to_string(); });
    ctx.check(total_symbol(quantize(p)) == p, "symbol o quantize = id", [&] { return "P = " + p.to_string(); });
    ctx.check(parse_operator(d.to_string(), n) == d, "operator text round trip", [&] { return d.to_string(); });
    ctx.check(parse_symbol(p.to_string(), n) == p, "symbol text round trip", [&] { return p.to_string(); });
  }
  for (std::size_t k = 0; k < ctx.config.potentials; ++k) {
    const std::size_t n = ctx.dim();
    const Polynomial f = ctx.rng.polynomial(n, b.max_degree + 1, b.coeff_bound, b.max_terms);
    const OneForm omega = OneForm::exact(f);
    const Polynomial pot = poincare_potential(omega);
    ctx.check(OneForm::exact(pot) == omega && (pot - f).is_constant(), "d(potential(df)) = df",
              [&] { return "f = " + f.to_string(); });
  }
  for (std::size_t k = 0; k < ctx.config.expressions; ++k) {
    const std::size_t n = ctx.dim();
    const Expression e = ctx.rng.expression(n, 3);
    const DiffOp d = normalize(e, n);
    const Polynomial f = ctx.rng.polynomial(n, 5, b.coeff_bound, 4);
    ctx.check(apply_op(d, f) == act(e, f), "normalize agrees with direct action",
              [&] { return "normalized = " + d.to_string() + ", f = " + f.to_string(); });
  }
}

struct SuiteEntry {
  std::string name;
  void (*run)(Context&);
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"filtration", filtration_suite}, {"symbol-compat", symbol_compat_suite},
      {"grothendieck", grothendieck_suite}, {"nilpotency", nilpotency_suite},
      {"centralizer", centralizer_suite}, {"adjoint", adjoint_suite},
      {"cocycle", cocycle_suite}, {"aut-d1", aut_d1_suite},
      {"aut-d", aut_d_suite}, {"aut-s", aut_s_suite},
      {"roundtrip", roundtrip_suite},
  };
  return entries;
}

SuiteReport run_one(std::size_t index, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx(config, index);
  ctx.report.name = registry()[index].name;
  ctx.report.seed = config.seed;
  try {
    registry()[index].run(ctx);
  } catch (const std::exception& e) {
    ctx.report.failures.push_back(std::string("unexpected exception: ") + e.what());
  }
  ctx.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return std::move(ctx.report);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

SuiteReport run_verification_suite(std::string_view name, const SuiteConfig& config) {
  const auto& entries = registry();
  if (name != "all") {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i].name == name) return run_one(i, config);
    throw DomainError("unknown suite '" + std::string(name) + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  // Suites are independent and own their engines, so they can run concurrently
  // without changing results.
  std::vector<std::future<SuiteReport>> jobs;
  for (std::size_t i = 0; i < entries.size(); ++i)
    jobs.push_back(std::async(std::launch::async, run_one, i, std::cref(config)));
  SuiteReport all{.name = "all", .seed = config.seed};
  for (auto& job : jobs) {
    SuiteReport part = job.get();
    all.cases += part.cases;
    for (const auto& f : part.failures) all.failures.push_back(part.name + ": " + f);
    all.parts.push_back(std::move(part));
  }
  all.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return all;
}

}  // namespace opcalc
