#pragma once

#include <cstddef>
#include <vector>

#include "opcalc/polynomial.hpp"
#include "opcalc/rational.hpp"

namespace opcalc {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact determinant by Gaussian elimination over Q.
Rational determinant(RationalMatrix m);
/// Inverse of a square matrix; throws DomainError if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Invertible affine map x ↦ Ax + b on Qⁿ.
class AffineMap {
 public:
  /// Throws DomainError when A is not square n×n, b has the wrong length, or det A = 0.
  AffineMap(RationalMatrix matrix, std::vector<Rational> offset);

  static AffineMap identity(std::size_t n);
  static AffineMap translation(std::vector<Rational> offset);

  std::size_t dim() const noexcept { return offset_.size(); }
  const RationalMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<Rational>& offset() const noexcept { return offset_; }
  bool is_identity() const;

  AffineMap inverse() const;
  /// (*this)∘inner, i.e. x ↦ φ(ψ(x)).
  AffineMap after(const AffineMap& inner) const;

  /// The polynomials (Ax+b)_i, one per coordinate.
  std::vector<Polynomial> components() const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
  RationalMatrix matrix_;
  std::vector<Rational> offset_;
};

/// p∘φ.
Polynomial affine_pullback(const AffineMap& phi, const Polynomial& p);

/// Polynomial 1-form ω = Σ ω_i dx_i.
class OneForm {
 public:
  explicit OneForm(std::vector<Polynomial> components);
  static OneForm zero(std::size_t n);
  /// df
  static OneForm exact(const Polynomial& f);

  std::size_t dim() const noexcept { return components_.front().dim(); }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  friend bool operator==(const OneForm&, const OneForm&) = default;

 private:
  std::vector<Polynomial> components_;
};

/// ∂_j ω_i = ∂_i ω_j for every pair.
bool is_closed(const OneForm& omega);

/// The potential f with df = ω and f(0) = 0, by radial integration; throws
/// DomainError when ω is not closed.
Polynomial poincare_potential(const OneForm& omega);

}  // namespace opcalc
