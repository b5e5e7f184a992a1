#include "opcalc/phase_symbol.hpp"

#include <vector>

#include "opcalc/errors.hpp"

namespace opcalc {

PhaseSymbol operator*(const PhaseSymbol& p, const PhaseSymbol& q) {
  require_same_dim(p.dim(), q.dim());
  PhaseSymbol r(p.dim());
  for (const auto& [alpha, a] : p.terms())
    for (const auto& [beta, b] : q.terms()) r.add_term(alpha + beta, a * b);
  return r;
}

PhaseSymbol total_symbol(const DiffOp& d) {
  PhaseSymbol s(d.dim());
  for (const auto& [alpha, c] : d.terms()) s.add_term(alpha, c);
  return s;
}

DiffOp quantize(const PhaseSymbol& p) {
  DiffOp d(p.dim());
  for (const auto& [alpha, c] : p.terms()) d.add_term(alpha, c);
  return d;
}

PhaseSymbol principal_symbol(const DiffOp& d, std::optional<unsigned> order) {
  const OrderValue deg = d.order();
  if (!order) {
    if (!deg) throw DomainError("principal symbol of the zero operator is undefined");
    return total_symbol(d.component(*deg));
  }
  if (!deg || *order > *deg) return PhaseSymbol(d.dim());
  if (*order < *deg)
    throw DomainError("symbol order " + std::to_string(*order) + " is below the operator order " +
                      std::to_string(*deg));
  return total_symbol(d.component(*deg));
}

PhaseSymbol x_derivative(const PhaseSymbol& p, std::size_t i) {
  PhaseSymbol r(p.dim());
  for (const auto& [alpha, c] : p.terms()) r.add_term(alpha, c.derivative(i));
  return r;
}

PhaseSymbol xi_derivative(const PhaseSymbol& p, std::size_t i) {
  if (i >= p.dim()) throw DomainError("fiber index out of range");
  PhaseSymbol r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha[i] == 0) continue;
    MultiIndex beta = alpha;
    beta.set(i, alpha[i] - 1);
    r.add_term(beta, c * Rational(alpha[i]));
  }
  return r;
}

PhaseSymbol poisson_bracket(const PhaseSymbol& p, const PhaseSymbol& q) {
  require_same_dim(p.dim(), q.dim());
  PhaseSymbol r(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    r += xi_derivative(p, i) * x_derivative(q, i);
    r -= x_derivative(p, i) * xi_derivative(q, i);
  }
  return r;
}

PhaseSymbol degree_map(DegreeMap which, const PhaseSymbol& p, const Rational& kappa) {
  if (which == DegreeMap::u_kappa && kappa == 0) throw DomainError("kappa must be nonzero");
  PhaseSymbol r(p.dim());
  for (const auto& [alpha, c] : p.terms()) {
    const long grade = alpha.total();
    const Rational factor = which == DegreeMap::derivation ? Rational(grade - 1) : rational_pow(kappa, 1 - grade);
    r.add_term(alpha, c * factor);
  }
  return r;
}

PhaseSymbol substitute(const PhaseSymbol& p, std::span<const PhaseSymbol> x_images,
                       std::span<const PhaseSymbol> xi_images) {
  const std::size_t n = p.dim();
  if (x_images.size() != n) throw DimensionMismatch(n, x_images.size());
  if (xi_images.size() != n) throw DimensionMismatch(n, xi_images.size());
  std::vector<std::vector<PhaseSymbol>> x_pow(n), xi_pow(n);
  auto power = [n](std::vector<PhaseSymbol>& cache, const PhaseSymbol& base, unsigned k) -> const PhaseSymbol& {
    if (cache.empty()) cache.push_back(PhaseSymbol::constant(n, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  PhaseSymbol result(n);
  for (const auto& [alpha, coef] : p.terms()) {
    PhaseSymbol fiber = PhaseSymbol::constant(n, 1);
    for (std::size_t i = 0; i < n; ++i)
      if (alpha[i] != 0) fiber = fiber * power(xi_pow[i], xi_images[i], alpha[i]);
    PhaseSymbol base(n);
    for (const auto& [beta, c] : coef.terms()) {
      PhaseSymbol mono = PhaseSymbol::constant(n, c);
      for (std::size_t i = 0; i < n; ++i)
        if (beta[i] != 0) mono = mono * power(x_pow[i], x_images[i], beta[i]);
      base += mono;
    }
    result += base * fiber;
  }
  return result;
}

PhaseSymbol phase_lift(const AffineMap& phi, const PhaseSymbol& p) {
  require_same_dim(phi.dim(), p.dim());
  const std::size_t n = p.dim();
  std::vector<PhaseSymbol> x_images;
  for (const auto& c : phi.inverse().components()) x_images.push_back(PhaseSymbol::function(c));
  std::vector<PhaseSymbol> xi_images;
  for (std::size_t i = 0; i < n; ++i) {
    PhaseSymbol img(n);
    for (std::size_t j = 0; j < n; ++j)
      img.add_term(MultiIndex::unit(n, j), Polynomial(n, phi.matrix()[j][i]));
    xi_images.push_back(std::move(img));
  }
  return substitute(p, x_images, xi_images);
}

PhaseSymbol vertical_translation_unchecked(const OneForm& omega, const PhaseSymbol& p) {
  require_same_dim(omega.dim(), p.dim());
  const std::size_t n = p.dim();
  std::vector<PhaseSymbol> x_images, xi_images;
  for (std::size_t i = 0; i < n; ++i) {
    x_images.push_back(PhaseSymbol::function(Polynomial::variable(n, i)));
    xi_images.push_back(PhaseSymbol::fiber(n, i) + PhaseSymbol::function(omega[i]));
  }
  return substitute(p, x_images, xi_images);
}

PhaseSymbol vertical_translation(const OneForm& omega, const PhaseSymbol& p) {
  if (!is_closed(omega)) throw DomainError("vertical translation requires a closed one-form");
  return vertical_translation_unchecked(omega, p);
}

}  // namespace opcalc
