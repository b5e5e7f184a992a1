#include "opcalc/affine.hpp"

#include <utility>

#include "opcalc/errors.hpp"

namespace opcalc {

namespace {

void require_square(const RationalMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw DomainError("matrix is not square");
}

}  // namespace

Rational determinant(RationalMatrix m) {
  require_square(m);
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m) {
  require_square(m);
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DomainError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = 1 / a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return inv;
}

AffineMap::AffineMap(RationalMatrix matrix, std::vector<Rational> offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (offset_.empty() || offset_.size() > kMaxDim) throw DomainError("affine map dimension out of range");
  if (matrix_.size() != offset_.size()) throw DimensionMismatch(matrix_.size(), offset_.size());
  require_square(matrix_);
  if (determinant(matrix_) == 0) throw DomainError("affine map has a singular linear part");
}

AffineMap AffineMap::identity(std::size_t n) {
  RationalMatrix id(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return AffineMap(std::move(id), std::vector<Rational>(n, Rational(0)));
}

AffineMap AffineMap::translation(std::vector<Rational> offset) {
  AffineMap phi = identity(offset.size());
  phi.offset_ = std::move(offset);
  return phi;
}

bool AffineMap::is_identity() const { return *this == identity(dim()); }

AffineMap AffineMap::inverse() const {
  RationalMatrix inv = opcalc::inverse(matrix_);
  const std::size_t n = dim();
  std::vector<Rational> b(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i] -= inv[i][j] * offset_[j];
  return AffineMap(std::move(inv), std::move(b));
}

AffineMap AffineMap::after(const AffineMap& inner) const {
  require_same_dim(dim(), inner.dim());
  const std::size_t n = dim();
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b = offset_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] += matrix_[i][k] * inner.matrix_[k][j];
      b[i] += matrix_[i][k] * inner.offset_[k];
    }
  return AffineMap(std::move(m), std::move(b));
}

std::vector<Polynomial> AffineMap::components() const {
  const std::size_t n = dim();
  std::vector<Polynomial> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p(n, offset_[i]);
    for (std::size_t j = 0; j < n; ++j) p.add_term(MultiIndex::unit(n, j), matrix_[i][j]);
    out.push_back(std::move(p));
  }
  return out;
}

Polynomial affine_pullback(const AffineMap& phi, const Polynomial& p) {
  require_same_dim(phi.dim(), p.dim());
  const auto images = phi.components();
  return p.substitute(images);
}

OneForm::OneForm(std::vector<Polynomial> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("one-form needs at least one component");
  for (const auto& c : components_) require_same_dim(components_.size(), c.dim());
}

OneForm OneForm::zero(std::size_t n) { return OneForm(std::vector<Polynomial>(n, Polynomial(n))); }

OneForm OneForm::exact(const Polynomial& f) {
  std::vector<Polynomial> parts;
  for (std::size_t i = 0; i < f.dim(); ++i) parts.push_back(f.derivative(i));
  return OneForm(std::move(parts));
}

bool OneForm::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

bool is_closed(const OneForm& omega) {
  const std::size_t n = omega.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (omega[i].derivative(j) != omega[j].derivative(i)) return false;
  return true;
}

Polynomial poincare_potential(const OneForm& omega) {
  if (!is_closed(omega)) throw DomainError("one-form is not closed");
  const std::size_t n = omega.dim();
  Polynomial f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiIndex ei = MultiIndex::unit(n, i);
    for (const auto& [alpha, c] : omega[i].terms()) f.add_term(alpha + ei, c / (alpha.total() + 1));
  }
  return f;
}

}  // namespace opcalc
