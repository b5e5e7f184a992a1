#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/errors.hpp"
#include "opcalc/format.hpp"
#include "opcalc/multi_index.hpp"
#include "opcalc/polynomial.hpp"

namespace opcalc {

/// Order/grade of a filtered element: a non-negative integer, or std::nullopt
/// for zero (which sits below every filter step).
using OrderValue = std::optional<unsigned>;

/// `none` or the integer.
std::string to_string(const OrderValue& order);

/// order ≤ bound with the zero sentinel treated as −∞.
inline bool order_at_most(const OrderValue& order, long bound) {
  return !order || static_cast<long>(*order) <= bound;
}

/// Sparse map from a fiber multi-index (∂^α or ξ^α) to a polynomial
/// coefficient in x. Both differential operators (normal-ordered, coefficients
/// left) and phase-space symbols share this layout; Tag keeps them distinct types.
template <class Tag>
class FiberTerms {
 public:
  using Terms = std::map<MultiIndex, Polynomial, GradedLexGreater>;

  explicit FiberTerms(std::size_t n) : n_(n) { (void)MultiIndex(n); }

  /// The element f·1 (multiplication operator / grade-0 symbol).
  static FiberTerms function(const Polynomial& f) {
    FiberTerms t(f.dim());
    t.add_term(MultiIndex(f.dim()), f);
    return t;
  }
  /// ∂_i or ξ_i, i 0-based.
  static FiberTerms fiber(std::size_t n, std::size_t i) {
    FiberTerms t(n);
    t.add_term(MultiIndex::unit(n, i), Polynomial(n, Rational(1)));
    return t;
  }
  static FiberTerms constant(std::size_t n, const Rational& c) { return function(Polynomial(n, c)); }

  std::size_t dim() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// max |α| over stored terms.
  OrderValue order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.total();
  }

  Polynomial coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Polynomial(n_) : it->second;
  }

  /// The part with |α| = k.
  FiberTerms component(unsigned k) const {
    FiberTerms out(n_);
    for (const auto& [alpha, c] : terms_)
      if (alpha.total() == k) out.terms_.emplace(alpha, c);
    return out;
  }

  void add_term(const MultiIndex& alpha, const Polynomial& c) {
    require_same_dim(n_, alpha.dim());
    require_same_dim(n_, c.dim());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Adds c·x^β·(fiber)^α.
  void add_term(const MultiIndex& alpha, const MultiIndex& beta, const Rational& c) {
    add_term(alpha, Polynomial::monomial(beta, c));
  }

  FiberTerms& operator+=(const FiberTerms& o) {
    require_same_dim(n_, o.n_);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
  }
  FiberTerms& operator-=(const FiberTerms& o) {
    require_same_dim(n_, o.n_);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
    return *this;
  }
  FiberTerms& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [alpha, c] : terms_) c *= s;
    return *this;
  }

  friend FiberTerms operator+(FiberTerms a, const FiberTerms& b) { return a += b; }
  friend FiberTerms operator-(FiberTerms a, const FiberTerms& b) { return a -= b; }
  friend FiberTerms operator-(FiberTerms a) { return a *= Rational(-1); }
  friend FiberTerms operator*(const Rational& s, FiberTerms a) { return a *= s; }
  friend FiberTerms operator*(FiberTerms a, const Rational& s) { return a *= s; }
  friend bool operator==(const FiberTerms&, const FiberTerms&) = default;

  /// Flat canonical text: one printed term per (fiber index, coefficient
  /// monomial) pair, fiber index in graded-lex order first.
  std::string to_string() const {
    std::vector<std::pair<Rational, std::string>> parts;
    for (const auto& [alpha, coef] : terms_) {
      const std::string fiber = monomial_text(alpha, Tag::fiber_prefix);
      for (const auto& [beta, c] : coef.terms()) {
        std::string base = monomial_text(beta, "x");
        if (!fiber.empty()) base = base.empty() ? fiber : base + '*' + fiber;
        parts.emplace_back(c, std::move(base));
      }
    }
    return format_terms(parts);
  }

 private:
  Terms terms_;
  std::size_t n_;
};

}  // namespace opcalc
