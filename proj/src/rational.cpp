#include "opcalc/rational.hpp"

#include <cctype>
#include <limits>

#include "opcalc/errors.hpp"

namespace opcalc {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 magnitude(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    auto x = static_cast<std::uint64_t>(a);
    auto y = static_cast<std::uint64_t>(b);
    while (y != 0) {
      const std::uint64_t t = x % y;
      x = y;
      y = t;
    }
    return x;
  }
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(i128 v) {
  const bool negative = v < 0;
  u128 m = magnitude(v);
  mpz_class hi(static_cast<unsigned long>(m >> 64));
  mpz_class lo(static_cast<unsigned long>(m & ~std::uint64_t{0}));
  mpz_class r = (hi << 64) + lo;
  return negative ? mpz_class(-r) : r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(unsigned long v) {
  if (v <= static_cast<unsigned long>(std::numeric_limits<std::int64_t>::max())) {
    num_ = static_cast<std::int64_t>(v);
  } else {
    *this = from_mpq(mpq_class(v));
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  *this = from_wide(num, den);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  *this = from_mpq(std::move(c));
}

Rational Rational::from_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const u128 g = gcd128(magnitude(num), static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  Rational r;
  if (fits(num) && fits(den)) {
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = num == 0 ? 1 : static_cast<std::int64_t>(den);
    return r;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    r.num_ = q.get_num().get_si();
    r.den_ = q.get_den().get_si();
    return r;
  }
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
  return q;
}

std::string Rational::str() const {
  if (big_) return big_->get_str(10);
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + '/' + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      Rational r;
      if (!__builtin_add_overflow(a.num_, b.num_, &r.num_)) return r;
      return Rational::from_wide(i128{a.num_} + b.num_, 1);
    }
    return Rational::from_wide(i128{a.num_} * b.den_ + i128{b.num_} * a.den_, i128{a.den_} * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      Rational r;
      if (!__builtin_sub_overflow(a.num_, b.num_, &r.num_)) return r;
      return Rational::from_wide(i128{a.num_} - b.num_, 1);
    }
    return Rational::from_wide(i128{a.num_} * b.den_ - i128{b.num_} * a.den_, i128{a.den_} * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() - b.to_mpq());
}

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      Rational r;
      if (!__builtin_mul_overflow(a.num_, b.num_, &r.num_)) return r;
      return Rational::from_wide(i128{a.num_} * b.num_, 1);
    }
    return Rational::from_wide(i128{a.num_} * b.num_, i128{a.den_} * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (!a.big_ && !b.big_) return Rational::from_wide(i128{a.num_} * b.den_, i128{a.den_} * b.num_);
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

Rational operator-(const Rational& a) {
  if (!a.big_ && a.num_ != std::numeric_limits<std::int64_t>::min()) {
    Rational r = a;
    r.num_ = -a.num_;
    return r;
  }
  return Rational::from_mpq(-a.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  // Both sides are canonical, and a value is big only when it does not fit inline.
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return i128{a.num_} * b.den_ <=> i128{b.num_} * a.den_;
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  if (negative) q = -q;
  return Rational(q);
}

std::string to_string(const Rational& q) { return q.str(); }

Rational rational_pow(const Rational& q, long k) {
  if (k < 0) {
    if (q.is_zero()) throw DomainError("zero raised to a negative power");
    return rational_pow(Rational(1) / q, -k);
  }
  Rational result = 1;
  Rational base = q;
  auto e = static_cast<unsigned long>(k);
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace opcalc
