#pragma once

#include <optional>

#include "opcalc/affine.hpp"
#include "opcalc/diff_op.hpp"
#include "opcalc/fiber_terms.hpp"

namespace opcalc {

struct SymbolTag {
  static constexpr const char* fiber_prefix = "xi";
};

/// Polynomial on T*Qⁿ in (x, ξ), graded by ξ-degree. Text form: `x1*xi1^2 + 2`.
using PhaseSymbol = FiberTerms<SymbolTag>;

/// Commutative product of symbols.
PhaseSymbol operator*(const PhaseSymbol& p, const PhaseSymbol& q);

/// a_α∂^α ↦ a_α ξ^α (normal-ordering symbol map).
PhaseSymbol total_symbol(const DiffOp& d);
/// Inverse of total_symbol.
DiffOp quantize(const PhaseSymbol& p);

/// With no order: the top ξ-grade of the total symbol (D must be nonzero).
/// With order i: σ(D) if i = deg D, 0 if i > deg D; throws DomainError if i < deg D.
PhaseSymbol principal_symbol(const DiffOp& d, std::optional<unsigned> order = std::nullopt);

/// {P, Q} = Σ_i ∂_{ξ_i}P ∂_{x_i}Q − ∂_{x_i}P ∂_{ξ_i}Q.
PhaseSymbol poisson_bracket(const PhaseSymbol& p, const PhaseSymbol& q);

/// ∂/∂x_i and ∂/∂ξ_i of a symbol.
PhaseSymbol x_derivative(const PhaseSymbol& p, std::size_t i);
PhaseSymbol xi_derivative(const PhaseSymbol& p, std::size_t i);

enum class DegreeMap { derivation, u_kappa };

/// derivation: P ↦ (i−1)P on grade i. u_kappa: P ↦ κ^{1−i}P on grade i (κ ≠ 0).
PhaseSymbol degree_map(DegreeMap which, const PhaseSymbol& p, const Rational& kappa = 1);

/// Substitution x ↦ x_images, ξ ↦ xi_images inside P; all images are symbols.
PhaseSymbol substitute(const PhaseSymbol& p, std::span<const PhaseSymbol> x_images,
                       std::span<const PhaseSymbol> xi_images);

/// Cotangent lift of φ(x) = Ax + b, acting by (x, ξ) ↦ (φ⁻¹(x), Aᵀξ).
PhaseSymbol phase_lift(const AffineMap& phi, const PhaseSymbol& p);

/// ξ_i ↦ ξ_i + ω_i(x); throws DomainError unless ω is closed.
PhaseSymbol vertical_translation(const OneForm& omega, const PhaseSymbol& p);
/// Same substitution without the closedness check (negative controls).
PhaseSymbol vertical_translation_unchecked(const OneForm& omega, const PhaseSymbol& p);

}  // namespace opcalc
