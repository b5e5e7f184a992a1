#include "opcalc/polynomial.hpp"

#include <algorithm>

#include "opcalc/errors.hpp"
#include "opcalc/format.hpp"

namespace opcalc {

Polynomial::Polynomial(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxDim)
    throw DomainError("dimension must be in 1.." + std::to_string(kMaxDim) + ", got " + std::to_string(n));
}

Polynomial::Polynomial(std::size_t n, const Rational& c) : Polynomial(n) {
  if (!c.is_zero()) terms_.emplace_back(MultiIndex(n), c);
}

Polynomial Polynomial::variable(std::size_t n, std::size_t i) {
  return monomial(MultiIndex::unit(n, i));
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
  Polynomial p(alpha.dim());
  p.add_term(alpha, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

std::optional<unsigned> Polynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.total();
}

namespace {

template <class Terms>
auto lower_bound_term(Terms& terms, const MultiIndex& alpha) {
  return std::lower_bound(terms.begin(), terms.end(), alpha,
                          [](const Polynomial::Term& t, const MultiIndex& a) { return GradedLexGreater{}(t.first, a); });
}

}  // namespace

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = lower_bound_term(terms_, alpha);
  return it != terms_.end() && it->first == alpha ? it->second : Rational(0);
}

Rational Polynomial::constant_term() const { return coefficient(MultiIndex(n_)); }

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
  require_same_dim(n_, alpha.dim());
  if (c.is_zero()) return;
  auto it = lower_bound_term(terms_, alpha);
  if (it == terms_.end() || !(it->first == alpha)) {
    terms_.emplace(it, alpha, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void Polynomial::normalize_terms() {
  GradedLexGreater greater;
  std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return greater(a.first, b.first); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Term acc = std::move(terms_[i]);
    std::size_t j = i + 1;
    for (; j < terms_.size() && terms_[j].first == acc.first; ++j) acc.second += terms_[j].second;
    if (!acc.second.is_zero()) terms_[out++] = std::move(acc);
    i = j;
  }
  terms_.resize(out);
}

namespace {

template <class Combine>
Polynomial::Terms merge_terms(const Polynomial::Terms& a, const Polynomial::Terms& b, Combine combine,
                              bool negate_b) {
  Polynomial::Terms out;
  out.reserve(a.size() + b.size());
  GradedLexGreater greater;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && greater(i->first, j->first))) {
      out.push_back(*i++);
    } else if (i == a.end() || greater(j->first, i->first)) {
      out.emplace_back(j->first, negate_b ? -j->second : j->second);
      ++j;
    } else {
      Rational c = combine(i->second, j->second);
      if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_dim(n_, other.n_);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, [](const Rational& x, const Rational& y) { return x + y; }, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_dim(n_, other.n_);
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, [](const Rational& x, const Rational& y) { return x - y; }, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_dim(a.n_, b.n_);
  Polynomial r(a.n_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [alpha, ca] : a.terms_)
    for (const auto& [beta, cb] : b.terms_) r.terms_.emplace_back(alpha + beta, ca * cb);
  if (a.terms_.size() > 1 && b.terms_.size() > 1) r.normalize_terms();
  return r;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  if (i >= n_) throw DomainError("variable index " + std::to_string(i + 1) + " out of range 1.." + std::to_string(n_));
  Polynomial r(n_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[i] == 0) continue;
    MultiIndex beta = alpha;
    beta.set(i, alpha[i] - 1);
    r.terms_.emplace_back(beta, c * alpha[i]);
  }
  return r;
}

Polynomial Polynomial::derivative(const MultiIndex& alpha) const {
  require_same_dim(n_, alpha.dim());
  Polynomial r(n_);
  for (const auto& [beta, c] : terms_) {
    if (!alpha.divides(beta)) continue;
    Rational factor = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (unsigned k = 0; k < alpha[i]; ++k) factor *= beta[i] - k;
    r.terms_.emplace_back(beta - alpha, factor);
  }
  return r;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
  if (images.size() != n_) throw DimensionMismatch(n_, images.size());
  const std::size_t m = images.empty() ? n_ : images.front().dim();
  for (const auto& img : images) require_same_dim(m, img.dim());
  // Cache powers of each image; degrees here are small.
  std::vector<std::vector<Polynomial>> powers(n_);
  Polynomial result(m);
  for (const auto& [alpha, c] : terms_) {
    Polynomial term(m, c);
    for (std::size_t i = 0; i < n_; ++i) {
      auto& cache = powers[i];
      if (cache.empty()) cache.emplace_back(m, Rational(1));
      while (cache.size() <= alpha[i]) cache.push_back(cache.back() * images[i]);
      if (alpha[i] != 0) term = term * cache[alpha[i]];
    }
    result += term;
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != n_) throw DimensionMismatch(n_, point.size());
  Rational sum = 0;
  for (const auto& [alpha, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < n_; ++i) t *= rational_pow(point[i], alpha[i]);
    sum += t;
  }
  return sum;
}

std::string Polynomial::to_string() const {
  std::vector<std::pair<Rational, std::string>> parts;
  parts.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) parts.emplace_back(c, monomial_text(alpha, "x"));
  return format_terms(parts);
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result(p.dim(), Rational(1));
  for (unsigned i = 0; i < k; ++i) result = result * p;
  return result;
}

Polynomial poly_arith(PolyOp op, const Polynomial& p, const Polynomial& q) {
  switch (op) {
    case PolyOp::add: return p + q;
    case PolyOp::mul: return p * q;
    case PolyOp::neg: return -p;
    case PolyOp::scale:
      if (!q.is_constant()) throw DomainError("scale expects a constant factor");
      require_same_dim(p.dim(), q.dim());
      return p * q.constant_term();
  }
  throw DomainError("unknown polynomial operation");
}

Polynomial poly_arith(PolyOp op, const Polynomial& p, const Rational& c) {
  switch (op) {
    case PolyOp::scale:
    case PolyOp::mul: return p * c;
    case PolyOp::add: return p + Polynomial(p.dim(), c);
    case PolyOp::neg: return -p;
  }
  throw DomainError("unknown polynomial operation");
}

}  // namespace opcalc
