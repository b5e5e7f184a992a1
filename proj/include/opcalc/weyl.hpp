#pragma once

#include <optional>
#include <span>

#include "opcalc/diff_op.hpp"
#include "opcalc/polynomial.hpp"

namespace opcalc {

/// D(f) = Σ_α a_α ∂^α f.
Polynomial apply_op(const DiffOp& d, const Polynomial& f);

/// Normal-ordered D∘E via the Leibniz rule.
DiffOp compose_ops(const DiffOp& d, const DiffOp& e);

/// [D, E] = D∘E − E∘D.
DiffOp commutator(const DiffOp& d, const DiffOp& e);

inline OrderValue op_order(const DiffOp& d) { return d.order(); }

/// Membership in the i-th step of the inductively defined (Grothendieck)
/// filtration, tested against a finite probe set: level −1 is {0}, level 0 are
/// operators agreeing with m_{D(1)} on every probe, level i+1 are operators whose
/// commutator with every m_f (f a probe) lies in level i.
bool grothendieck_member(const DiffOp& d, int level, std::span<const Polynomial> probes);

/// Formal adjoint for the standard density: D*(g) = Σ_α (−1)^{|α|} ∂^α(a_α g).
DiffOp formal_adjoint(const DiffOp& d);

/// C(D) = −D*. An involutive Lie-algebra automorphism.
DiffOp conjugation_C(const DiffOp& d);

inline constexpr int kDefaultNilpotencyBound = 16;

/// Least n ≤ n_max with (ad_D)ⁿ(m_f) = 0; std::nullopt means no witness was
/// found within the bound, which does not disprove nilpotency.
std::optional<int> ad_nilpotency_witness(const DiffOp& d, const Polynomial& f, int n_max = kDefaultNilpotencyBound);

/// First order with vanishing zero-order term.
bool is_vector_field(const DiffOp& d);

/// Zero-order part D(1) and the remainder D − m_{D(1)}.
Polynomial zero_order_part(const DiffOp& d);
DiffOp without_zero_order(const DiffOp& d);

/// div(Σ Xⁱ∂_i) = Σ ∂_i Xⁱ; throws DomainError for non-vector-fields.
Polynomial divergence(const DiffOp& x);

enum class Side { left, right };

/// Left: m_f∘D. Right: D∘m_f.
DiffOp mult_operator(Side side, const Polynomial& f, const DiffOp& d);

}  // namespace opcalc
