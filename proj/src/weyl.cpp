#include "opcalc/weyl.hpp"


#include "opcalc/errors.hpp"

namespace opcalc {

Polynomial apply_op(const DiffOp& d, const Polynomial& f) {
  require_same_dim(d.dim(), f.dim());
  Polynomial result(d.dim());
  for (const auto& [alpha, coef] : d.terms()) {
    const Polynomial df = f.derivative(alpha);
    if (!df.is_zero()) result += coef * df;
  }
  return result;
}

DiffOp compose_ops(const DiffOp& d, const DiffOp& e) {
  require_same_dim(d.dim(), e.dim());
  DiffOp result(d.dim());
  for (const auto& [alpha, a] : d.terms()) {
    for_each_divisor(alpha, [&](const MultiIndex& gamma) {
      const MultiIndex rest = alpha - gamma;
      const Rational binom(multi_binomial(alpha, gamma));
      for (const auto& [beta, b] : e.terms()) {
        const Polynomial db = b.derivative(gamma);
        if (db.is_zero()) continue;
        result.add_term(rest + beta, binom * (a * db));
      }
    });
  }
  return result;
}

DiffOp commutator(const DiffOp& d, const DiffOp& e) { return compose_ops(d, e) - compose_ops(e, d); }

namespace {

/// [D, m_f] = Σ_α Σ_{0≠γ≤α} binom(α,γ) a_α (∂^γ f) ∂^{α−γ}.
DiffOp bracket_with_function(const DiffOp& d, const Polynomial& f) {
  DiffOp result(d.dim());
  for (const auto& [alpha, a] : d.terms()) {
    for_each_divisor(alpha, [&](const MultiIndex& gamma) {
      if (gamma.is_zero()) return;
      const Polynomial df = f.derivative(gamma);
      if (df.is_zero()) return;
      result.add_term(alpha - gamma, Rational(multi_binomial(alpha, gamma)) * (a * df));
    });
  }
  return result;
}

// Iterated brackets with multiplication operators commute with each other
// ([[D,m_f],m_g] = [[D,m_g],m_f] since [m_f,m_g] = 0), so only nondecreasing
// probe sequences need to be visited.
bool member_from(const DiffOp& d, int level, std::span<const Polynomial> probes, std::size_t first) {
  if (d.is_zero()) return true;
  if (level == -1) return false;
  if (level == 0) {
    const Polynomial unit = zero_order_part(d);
    for (const auto& p : probes)
      if (apply_op(d, p) != unit * p) return false;
    return true;
  }
  for (std::size_t k = first; k < probes.size(); ++k)
    if (!member_from(bracket_with_function(d, probes[k]), level - 1, probes, k)) return false;
  return true;
}

}  // namespace

bool grothendieck_member(const DiffOp& d, int level, std::span<const Polynomial> probes) {
  if (probes.empty()) throw DomainError("grothendieck_member needs at least one probe");
  if (level < -1) throw DomainError("filtration level must be at least -1");
  for (const auto& p : probes) require_same_dim(d.dim(), p.dim());
  return member_from(d, level, probes, 0);
}

DiffOp formal_adjoint(const DiffOp& d) {
  DiffOp result(d.dim());
  for (const auto& [alpha, a] : d.terms()) {
    const Rational sign = alpha.total() % 2 == 0 ? 1 : -1;
    for_each_divisor(alpha, [&](const MultiIndex& gamma) {
      const Polynomial da = a.derivative(alpha - gamma);
      if (da.is_zero()) return;
      result.add_term(gamma, (sign * Rational(multi_binomial(alpha, gamma))) * da);
    });
  }
  return result;
}

DiffOp conjugation_C(const DiffOp& d) { return -formal_adjoint(d); }

std::optional<int> ad_nilpotency_witness(const DiffOp& d, const Polynomial& f, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  require_same_dim(d.dim(), f.dim());
  DiffOp current = DiffOp::function(f);
  for (int k = 1; k <= n_max; ++k) {
    current = commutator(d, current);
    if (current.is_zero()) return k;
  }
  return std::nullopt;
}

bool is_vector_field(const DiffOp& d) {
  for (const auto& [alpha, c] : d.terms())
    if (alpha.total() != 1) return false;
  return true;
}

Polynomial zero_order_part(const DiffOp& d) { return d.coefficient(MultiIndex(d.dim())); }

DiffOp without_zero_order(const DiffOp& d) { return d - DiffOp::function(zero_order_part(d)); }

Polynomial divergence(const DiffOp& x) {
  if (!is_vector_field(x)) throw DomainError("divergence expects a vector field, got " + x.to_string());
  Polynomial div(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) div += x.coefficient(MultiIndex::unit(x.dim(), i)).derivative(i);
  return div;
}

DiffOp mult_operator(Side side, const Polynomial& f, const DiffOp& d) {
  const DiffOp mf = DiffOp::function(f);
  return side == Side::left ? compose_ops(mf, d) : compose_ops(d, mf);
}

}  // namespace opcalc
