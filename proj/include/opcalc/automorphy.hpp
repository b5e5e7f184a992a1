#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/affine.hpp"
#include "opcalc/diff_op.hpp"
#include "opcalc/phase_symbol.hpp"
#include "opcalc/random.hpp"

namespace opcalc {

/// Parameters (κ, λ, ω, φ) of an automorphism of the first-order operators
///   f + X ↦ (κ f + λ div X + ω(X))∘φ⁻¹ + φ_*(X).
struct D1AutoSpec {
  Rational kappa;
  Rational lambda;
  OneForm omega;
  AffineMap phi;

  /// Throws DomainError unless κ ≠ 0, ω closed and all dimensions agree.
  D1AutoSpec(Rational kappa, Rational lambda, OneForm omega, AffineMap phi);
  static D1AutoSpec identity(std::size_t n);
  std::size_t dim() const noexcept { return phi.dim(); }
  friend bool operator==(const D1AutoSpec&, const D1AutoSpec&) = default;
};

/// Parameters (φ, a, ω) of D ↦ φ_*(C^a(e^{ω̄}(D))).
struct DAutoSpec {
  AffineMap phi;
  int a;
  OneForm omega;

  DAutoSpec(AffineMap phi, int a, OneForm omega);
  static DAutoSpec identity(std::size_t n);
  std::size_t dim() const noexcept { return phi.dim(); }
  friend bool operator==(const DAutoSpec&, const DAutoSpec&) = default;
};

/// Parameters (κ, φ, ω) of P ↦ U_κ(P)∘φ*∘Exp(ω^v).
struct SAutoSpec {
  Rational kappa;
  AffineMap phi;
  OneForm omega;

  SAutoSpec(Rational kappa, AffineMap phi, OneForm omega);
  static SAutoSpec identity(std::size_t n);
  std::size_t dim() const noexcept { return phi.dim(); }
  friend bool operator==(const SAutoSpec&, const SAutoSpec&) = default;
};

/// φ_*(D): f ↦ (D(f∘φ))∘φ⁻¹. Preserves order and is an associative automorphism.
DiffOp pushforward(const AffineMap& phi, const DiffOp& d);

/// ω(X) = Σ Xⁱ ω_i for a vector field X.
Polynomial pair_form(const OneForm& omega, const DiffOp& x);

/// e^{ω̄}(D) = Σ_k ω̄ᵏ(D)/k! with ω̄(E) = [E, m_f], f the potential of ω.
/// Equivalently D ↦ e^{−f}·D·e^{f}.
DiffOp exp_omega(const OneForm& omega, const DiffOp& d);

DiffOp d1_apply(const D1AutoSpec& spec, const Polynomial& f, const DiffOp& x);
/// Splits a first-order operator into f + X and applies the formula above.
DiffOp d1_apply(const D1AutoSpec& spec, const DiffOp& d);

DiffOp d_apply(const DAutoSpec& spec, const DiffOp& d);

PhaseSymbol s_apply(const SAutoSpec& spec, const PhaseSymbol& p);

template <class T>
using LinearMap = std::function<T(const T&)>;

struct VerificationReport {
  bool pass = true;
  std::size_t cases = 0;
  /// First counterexample in canonical text form; empty on pass.
  std::string failure;
  /// Which scaling convention the filtration check matched, when relevant.
  std::string convention;
};

/// Checks linearity on combinations of each pair, Φ([a,b]) = [Φa, Φb] on every
/// pair, and that Φ does not drop the rank of the sample span.
VerificationReport verify_lie_automorphism(const LinearMap<DiffOp>& phi,
                                           std::span<const std::pair<DiffOp, DiffOp>> samples);
VerificationReport verify_lie_automorphism(const LinearMap<PhaseSymbol>& phi,
                                           std::span<const std::pair<PhaseSymbol, PhaseSymbol>> samples);

struct FiltrationOptions {
  std::size_t dim = 2;
  std::size_t samples_per_order = 10;
  GenBounds bounds{};
  /// Compare against κ^{1−i}·φ_*(D) instead of κ^{1−i}·D.
  std::optional<AffineMap> frame;
};

/// For random D of each order i ≤ max_order: order(Φ(D)) ≤ i and
/// order(Φ(D) − κ^{1−i}·D) ≤ i − 1 (D replaced by φ_*(D) when a frame is set).
VerificationReport verify_filtration_respect(const LinearMap<DiffOp>& phi, const Rational& kappa,
                                             unsigned max_order, RandomSource& rng,
                                             const FiltrationOptions& options = {});

/// Recovers (κ, λ, ω, φ) from a black-box automorphism of the first-order
/// operators in dimension n, then confirms the round trip on probes. Throws
/// DomainError when Φ(1) is not a nonzero constant, the coordinate images are
/// not affine, or the reconstructed map disagrees with Φ.
D1AutoSpec extract_d1_params(const LinearMap<DiffOp>& phi, std::size_t n,
                             std::span<const DiffOp> extra_probes = {});

}  // namespace opcalc
