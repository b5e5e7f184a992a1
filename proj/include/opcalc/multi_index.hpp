#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace opcalc {

/// Largest ambient dimension supported by the kernel.
inline constexpr std::size_t kMaxDim = 8;
/// Largest single exponent a MultiIndex can hold.
inline constexpr unsigned kMaxExponent = 255;

/// Exponent vector (α¹,…,αⁿ) in a fixed ambient dimension n ≤ kMaxDim.
/// Exponents are packed one byte each, x1 in the most significant byte, so
/// lexicographic comparison is an integer comparison.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n);

  /// The index with a single 1 in slot i (0-based).
  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t dim() const noexcept { return n_; }
  unsigned operator[](std::size_t i) const noexcept { return (packed_ >> shift(i)) & 0xFFU; }
  void set(std::size_t i, unsigned value);

  /// |α|
  unsigned total() const noexcept { return total_; }
  bool is_zero() const noexcept { return total_ == 0; }
  std::uint64_t packed() const noexcept { return packed_; }

  /// Componentwise ≤.
  bool divides(const MultiIndex& other) const noexcept;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; requires other.divides(*this).
  MultiIndex operator-(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  static constexpr unsigned shift(std::size_t i) noexcept { return static_cast<unsigned>(8 * (kMaxDim - 1 - i)); }

  std::uint64_t packed_ = 0;
  std::uint16_t total_ = 0;
  std::uint8_t n_ = 0;
};

/// Graded lexicographic order, largest first: higher total degree wins, ties
/// broken by the first differing exponent (larger exponent of x1 first).
struct GradedLexGreater {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const noexcept {
    if (a.total() != b.total()) return a.total() > b.total();
    return a.packed() > b.packed();
  }
};

/// Π_i binom(α_i, β_i); requires β ≤ α componentwise.
unsigned long multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// Calls fn(β) for every β ≤ α componentwise.
template <class Fn>
void for_each_divisor(const MultiIndex& alpha, Fn&& fn) {
  MultiIndex beta(alpha.dim());
  const std::size_t n = alpha.dim();
  while (true) {
    fn(static_cast<const MultiIndex&>(beta));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (beta[i] < alpha[i]) {
        beta.set(i, beta[i] + 1);
        break;
      }
      beta.set(i, 0);
    }
    if (i == n) return;
  }
}

/// `prefix1^a*prefix2^b...`; empty string for the zero index.
std::string monomial_text(const MultiIndex& alpha, const std::string& prefix);

}  // namespace opcalc
