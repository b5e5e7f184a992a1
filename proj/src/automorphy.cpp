#include "opcalc/automorphy.hpp"

#include <map>
#include <stdexcept>

#include "opcalc/errors.hpp"
#include "opcalc/weyl.hpp"

namespace opcalc {

namespace {

void require_closed(const OneForm& omega) {
  if (!is_closed(omega)) throw DomainError("one-form is not closed");
}

}  // namespace

D1AutoSpec::D1AutoSpec(Rational kappa_, Rational lambda_, OneForm omega_, AffineMap phi_)
    : kappa(std::move(kappa_)), lambda(std::move(lambda_)), omega(std::move(omega_)), phi(std::move(phi_)) {
  if (kappa == 0) throw DomainError("kappa must be nonzero");
  require_same_dim(omega.dim(), phi.dim());
  require_closed(omega);
}

D1AutoSpec D1AutoSpec::identity(std::size_t n) { return {1, 0, OneForm::zero(n), AffineMap::identity(n)}; }

DAutoSpec::DAutoSpec(AffineMap phi_, int a_, OneForm omega_)
    : phi(std::move(phi_)), a(a_), omega(std::move(omega_)) {
  if (a != 0 && a != 1) throw DomainError("conjugation exponent a must be 0 or 1");
  require_same_dim(omega.dim(), phi.dim());
  require_closed(omega);
}

DAutoSpec DAutoSpec::identity(std::size_t n) { return {AffineMap::identity(n), 0, OneForm::zero(n)}; }

SAutoSpec::SAutoSpec(Rational kappa_, AffineMap phi_, OneForm omega_)
    : kappa(std::move(kappa_)), phi(std::move(phi_)), omega(std::move(omega_)) {
  if (kappa == 0) throw DomainError("kappa must be nonzero");
  require_same_dim(omega.dim(), phi.dim());
  require_closed(omega);
}

SAutoSpec SAutoSpec::identity(std::size_t n) { return {1, AffineMap::identity(n), OneForm::zero(n)}; }

DiffOp pushforward(const AffineMap& phi, const DiffOp& d) {
  require_same_dim(phi.dim(), d.dim());
  const std::size_t n = d.dim();
  const AffineMap inv = phi.inverse();
  // Chain rule: ∂_i(h∘φ) = Σ_j A_ji (∂_j h)∘φ, so ∂_i is carried to Σ_j A_ji ∂_j.
  std::vector<DiffOp> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DiffOp img(n);
    for (std::size_t j = 0; j < n; ++j) img.add_term(MultiIndex::unit(n, j), Polynomial(n, phi.matrix()[j][i]));
    images.push_back(std::move(img));
  }
  std::map<MultiIndex, DiffOp, GradedLexGreater> derivative_cache;
  auto derivative_image = [&](const MultiIndex& alpha) -> const DiffOp& {
    auto it = derivative_cache.find(alpha);
    if (it != derivative_cache.end()) return it->second;
    DiffOp prod = DiffOp::constant(n, 1);
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < alpha[i]; ++k) prod = compose_ops(prod, images[i]);
    return derivative_cache.emplace(alpha, std::move(prod)).first->second;
  };
  DiffOp result(n);
  for (const auto& [alpha, a] : d.terms())
    result += compose_ops(DiffOp::function(affine_pullback(inv, a)), derivative_image(alpha));
  return result;
}

Polynomial pair_form(const OneForm& omega, const DiffOp& x) {
  if (!is_vector_field(x)) throw DomainError("expected a vector field, got " + x.to_string());
  require_same_dim(omega.dim(), x.dim());
  Polynomial sum(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) sum += x.coefficient(MultiIndex::unit(x.dim(), i)) * omega[i];
  return sum;
}

DiffOp exp_omega(const OneForm& omega, const DiffOp& d) {
  require_same_dim(omega.dim(), d.dim());
  const DiffOp mf = DiffOp::function(poincare_potential(omega));
  if (d.is_zero()) return d;
  const unsigned bound = *d.order() + 1;
  DiffOp result = d;
  DiffOp term = d;
  for (unsigned k = 1; k <= bound && !term.is_zero(); ++k) {
    term = commutator(term, mf) * Rational(1, k);
    result += term;
  }
  if (!term.is_zero()) throw std::logic_error("exp_omega: bracket series did not terminate within order+1 steps");
  return result;
}

DiffOp d1_apply(const D1AutoSpec& spec, const Polynomial& f, const DiffOp& x) {
  require_same_dim(spec.dim(), f.dim());
  require_same_dim(spec.dim(), x.dim());
  if (!is_vector_field(x)) throw DomainError("d1_apply expects a vector field, got " + x.to_string());
  const AffineMap inv = spec.phi.inverse();
  Polynomial zero_order = spec.kappa * f + spec.lambda * divergence(x) + pair_form(spec.omega, x);
  return DiffOp::function(affine_pullback(inv, zero_order)) + pushforward(spec.phi, x);
}

DiffOp d1_apply(const D1AutoSpec& spec, const DiffOp& d) {
  if (!order_at_most(d.order(), 1)) throw DomainError("d1_apply expects a first-order operator, got " + d.to_string());
  return d1_apply(spec, zero_order_part(d), without_zero_order(d));
}

DiffOp d_apply(const DAutoSpec& spec, const DiffOp& d) {
  DiffOp out = exp_omega(spec.omega, d);
  if (spec.a == 1) out = conjugation_C(out);
  return pushforward(spec.phi, out);
}

PhaseSymbol s_apply(const SAutoSpec& spec, const PhaseSymbol& p) {
  require_same_dim(spec.dim(), p.dim());
  // (U_κ P)∘L∘T with T(x,ξ) = (x, ξ+ω) applied first: substitute L, then T.
  const PhaseSymbol scaled = degree_map(DegreeMap::u_kappa, p, spec.kappa);
  return vertical_translation(spec.omega, phase_lift(spec.phi, scaled));
}

namespace {

struct Key {
  MultiIndex fiber;
  MultiIndex base;
};

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const noexcept {
    GradedLexGreater g;
    if (g(a.fiber, b.fiber)) return true;
    if (g(b.fiber, a.fiber)) return false;
    return g(a.base, b.base);
  }
};

using SparseVector = std::map<Key, Rational, KeyLess>;

template <class T>
SparseVector flatten(const T& element) {
  SparseVector v;
  for (const auto& [alpha, coef] : element.terms())
    for (const auto& [beta, c] : coef.terms()) v.emplace(Key{alpha, beta}, c);
  return v;
}

/// Rank of a list of sparse vectors by incremental elimination on leading keys.
std::size_t rank(const std::vector<SparseVector>& vectors) {
  std::map<Key, SparseVector, KeyLess> basis;
  for (SparseVector v : vectors) {
    while (!v.empty()) {
      const auto lead = v.begin();
      auto row = basis.find(lead->first);
      if (row == basis.end()) {
        const Key k = lead->first;
        basis.emplace(k, std::move(v));
        break;
      }
      const Rational factor = lead->second / row->second.begin()->second;
      for (const auto& [key, c] : row->second) {
        auto [it, inserted] = v.try_emplace(key, -factor * c);
        if (!inserted) {
          it->second -= factor * c;
          if (it->second == 0) v.erase(it);
        }
      }
    }
  }
  return basis.size();
}

DiffOp lie_bracket(const DiffOp& a, const DiffOp& b) { return commutator(a, b); }
PhaseSymbol lie_bracket(const PhaseSymbol& a, const PhaseSymbol& b) { return poisson_bracket(a, b); }

constexpr std::size_t kRankSampleLimit = 24;

template <class T>
VerificationReport verify_lie_impl(const LinearMap<T>& phi, std::span<const std::pair<T, T>> samples) {
  VerificationReport report;
  if (samples.empty()) throw DomainError("verify_lie_automorphism needs at least one sample pair");
  std::vector<SparseVector> span_vectors, image_vectors;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& [a, b] = samples[k];
    const T pa = phi(a);
    const T pb = phi(b);
    const Rational s(static_cast<long>(k % 5) + 1);
    const Rational t(-(static_cast<long>(k % 3) + 1), 2);
    if (phi(s * a + t * b) != s * pa + t * pb) {
      report.pass = false;
      report.failure = "linearity fails for a = " + a.to_string() + ", b = " + b.to_string();
      return report;
    }
    const T lhs = phi(lie_bracket(a, b));
    const T rhs = lie_bracket(pa, pb);
    if (lhs != rhs) {
      report.pass = false;
      report.failure = "bracket not preserved for a = " + a.to_string() + ", b = " + b.to_string() +
                       ": image of bracket = " + lhs.to_string() + ", bracket of images = " + rhs.to_string();
      return report;
    }
    if (span_vectors.size() < kRankSampleLimit) {
      span_vectors.push_back(flatten(a));
      span_vectors.push_back(flatten(b));
      image_vectors.push_back(flatten(pa));
      image_vectors.push_back(flatten(pb));
    }
    ++report.cases;
  }
  const std::size_t r = rank(span_vectors);
  const std::size_t ri = rank(image_vectors);
  if (r != ri) {
    report.pass = false;
    report.failure = "not injective on the sample span: rank " + std::to_string(r) + " drops to " + std::to_string(ri);
  }
  return report;
}

}  // namespace

VerificationReport verify_lie_automorphism(const LinearMap<DiffOp>& phi,
                                           std::span<const std::pair<DiffOp, DiffOp>> samples) {
  return verify_lie_impl(phi, samples);
}

VerificationReport verify_lie_automorphism(const LinearMap<PhaseSymbol>& phi,
                                           std::span<const std::pair<PhaseSymbol, PhaseSymbol>> samples) {
  return verify_lie_impl(phi, samples);
}

VerificationReport verify_filtration_respect(const LinearMap<DiffOp>& phi, const Rational& kappa,
                                             unsigned max_order, RandomSource& rng,
                                             const FiltrationOptions& options) {
  if (kappa == 0) throw DomainError("kappa must be nonzero");
  VerificationReport report;
  report.convention = "kappa^(1-i)";
  for (unsigned i = 0; i <= max_order; ++i) {
    for (std::size_t s = 0; s < options.samples_per_order; ++s) {
      const DiffOp d = rng.operator_of_order(options.dim, i, options.bounds);
      const DiffOp image = phi(d);
      const DiffOp reference = options.frame ? pushforward(*options.frame, d) : d;
      const DiffOp remainder = image - rational_pow(kappa, 1 - static_cast<long>(i)) * reference;
      ++report.cases;
      if (!order_at_most(image.order(), i)) {
        report.pass = false;
        report.failure = "order raised: D = " + d.to_string() + ", image = " + image.to_string();
        return report;
      }
      if (!order_at_most(remainder.order(), static_cast<long>(i) - 1)) {
        report.pass = false;
        report.failure = "top part is not kappa^(1-i) times the input: D = " + d.to_string() +
                         ", image = " + image.to_string();
        return report;
      }
    }
  }
  return report;
}

D1AutoSpec extract_d1_params(const LinearMap<DiffOp>& phi, std::size_t n, std::span<const DiffOp> extra_probes) {
  const DiffOp one = phi(DiffOp::constant(n, 1));
  if (!order_at_most(one.order(), 0) || !zero_order_part(one).is_constant() || one.is_zero())
    throw DomainError("image of 1 is not a nonzero constant: " + one.to_string());
  const Rational kappa = zero_order_part(one).constant_term();

  // Φ(x_j)/κ = x_j∘φ⁻¹ gives the rows of φ⁻¹.
  RationalMatrix inv_matrix(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> inv_offset(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    const DiffOp img = phi(DiffOp::function(Polynomial::variable(n, j)));
    if (!order_at_most(img.order(), 0)) throw DomainError("image of a coordinate is not a function: " + img.to_string());
    const Polynomial g = zero_order_part(img) * (1 / kappa);
    if (g.degree() && *g.degree() > 1) throw DomainError("recovered coordinate change is not affine: " + g.to_string());
    for (std::size_t k = 0; k < n; ++k) inv_matrix[j][k] = g.coefficient(MultiIndex::unit(n, k));
    inv_offset[j] = g.constant_term();
  }
  if (determinant(inv_matrix) == 0) throw DomainError("recovered coordinate change is not invertible");
  const AffineMap phi_map = AffineMap(inv_matrix, inv_offset).inverse();

  std::vector<Polynomial> omega_parts;
  for (std::size_t i = 0; i < n; ++i) {
    const DiffOp img = phi(DiffOp::fiber(n, i));
    omega_parts.push_back(affine_pullback(phi_map, zero_order_part(img)));
  }
  OneForm omega(omega_parts);
  if (!is_closed(omega)) throw DomainError("recovered one-form is not closed");

  const DiffOp x1d1 = compose_ops(DiffOp::function(Polynomial::variable(n, 0)), DiffOp::fiber(n, 0));
  const Polynomial residual =
      affine_pullback(phi_map, zero_order_part(phi(x1d1))) - Polynomial::variable(n, 0) * omega[0];
  if (!residual.is_constant()) throw DomainError("divergence coefficient is not constant: " + residual.to_string());
  const Rational lambda = residual.constant_term();

  D1AutoSpec spec(kappa, lambda, std::move(omega), phi_map);

  std::vector<DiffOp> probes(extra_probes.begin(), extra_probes.end());
  probes.push_back(DiffOp::constant(n, 1));
  for (std::size_t j = 0; j < n; ++j) {
    const Polynomial xj = Polynomial::variable(n, j);
    probes.push_back(DiffOp::function(xj * xj));
    for (std::size_t i = 0; i < n; ++i) {
      probes.push_back(compose_ops(DiffOp::function(xj), DiffOp::fiber(n, i)));
      probes.push_back(compose_ops(DiffOp::function(xj * xj), DiffOp::fiber(n, i)));
    }
  }
  for (const auto& p : probes)
    if (phi(p) != d1_apply(spec, p)) throw DomainError("reconstructed automorphism disagrees with the input on " + p.to_string());
  return spec;
}

}  // namespace opcalc
