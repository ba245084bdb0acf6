#pragma once

// Exact rational scalar used by every module. Backed by GMP's mpq_class,
// which keeps values canonical (lowest terms, positive denominator) after
// every operation.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace continua {

class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rational(long n, long d);
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Numerator and denominator as arbitrary-precision decimal strings.
  static Rational from_parts(std::string_view num, std::string_view den);
  // Accepts "p/q", "p" and finite decimals such as "0.125".
  static Rational parse(std::string_view text);

  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }
  std::string str() const;  // "p/q", or "p" when integral

  const mpq_class& raw() const { return v_; }
  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// 1 / 2^k.
Rational pow2_inv(unsigned k);
// b^e for a nonnegative integer exponent.
Rational pow(const Rational& b, unsigned e);

// Certified rational enclosure [lo, hi] of sqrt(q) for q >= 0 with
// hi - lo <= 1/scale. Exact (lo == hi) when q is a square of a rational.
struct SqrtEnclosure {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};
SqrtEnclosure sqrt_enclosure(const Rational& q, unsigned long scale = 10'000'000UL);

}  // namespace continua

template <>
struct std::hash<continua::Rational> {
  std::size_t operator()(const continua::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
