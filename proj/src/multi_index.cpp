#include "opcalc/multi_index.hpp"

#include "opcalc/errors.hpp"

namespace opcalc {

MultiIndex::MultiIndex(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
  if (n == 0 || n > kMaxDim)
    throw DomainError("dimension must be in 1.." + std::to_string(kMaxDim) + ", got " + std::to_string(n));
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  MultiIndex m(n);
  if (i >= n) throw DomainError("variable index " + std::to_string(i + 1) + " out of range 1.." + std::to_string(n));
  m.set(i, 1);
  return m;
}

void MultiIndex::set(std::size_t i, unsigned value) {
  if (value > kMaxExponent) throw DomainError("exponent exceeds " + std::to_string(kMaxExponent));
  const unsigned old = (*this)[i];
  packed_ = (packed_ & ~(std::uint64_t{0xFF} << shift(i))) | (std::uint64_t{value} << shift(i));
  total_ = static_cast<std::uint16_t>(total_ - old + value);
}

bool MultiIndex::divides(const MultiIndex& other) const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)[i] > other[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  require_same_dim(n_, other.n_);
  // Bytes cannot carry into each other unless an exponent overflows; check that first.
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)[i] + other[i] > kMaxExponent) throw DomainError("exponent exceeds " + std::to_string(kMaxExponent));
  MultiIndex r = *this;
  r.packed_ += other.packed_;
  r.total_ = static_cast<std::uint16_t>(total_ + other.total_);
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  require_same_dim(n_, other.n_);
  MultiIndex r = *this;
  r.packed_ -= other.packed_;
  r.total_ = static_cast<std::uint16_t>(total_ - other.total_);
  return r;
}

unsigned long multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  unsigned long result = 1;
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    unsigned long c = 1;
    const unsigned k = beta[i];
    for (unsigned j = 1; j <= k; ++j) c = c * (alpha[i] - k + j) / j;
    result *= c;
  }
  return result;
}

std::string monomial_text(const MultiIndex& alpha, const std::string& prefix) {
  std::string out;
  for (std::size_t i = 0; i < alpha.dim(); ++i) {
    if (alpha[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += prefix + std::to_string(i + 1);
    if (alpha[i] > 1) out += '^' + std::to_string(alpha[i]);
  }
  return out;
}

}  // namespace opcalc
