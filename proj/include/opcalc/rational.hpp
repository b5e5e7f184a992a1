#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace opcalc {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are stored inline;
/// anything larger is promoted to a GMP rational and demoted again once it
/// fits. Values are immutable once built and safe to share across threads.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}
  Rational(long v) : num_(v) {}
  Rational(long long v) : num_(v) {}
  Rational(unsigned v) : num_(v) {}
  Rational(unsigned long v);
  /// num/den reduced; throws DomainError when den = 0.
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const noexcept;
  mpq_class to_mpq() const;
  std::string str() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  static Rational from_wide(__int128 num, __int128 den);
  static Rational from_mpq(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

inline int sgn(const Rational& q) noexcept { return q.sign(); }
Rational abs(const Rational& q);

/// Parses `p` or `p/q` (optional leading sign); throws DomainError on bad input or q = 0.
Rational parse_rational(std::string_view text);

/// `p` when the denominator is 1, `p/q` otherwise.
std::string to_string(const Rational& q);

/// q^k for a possibly negative integer exponent; q must be nonzero when k < 0.
Rational rational_pow(const Rational& q, long k);

}  // namespace opcalc
