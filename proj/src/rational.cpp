#include "continua/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace continua {

Rational::Rational(long n, long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::from_parts(std::string_view num, std::string_view den) {
  mpz_class n, d;
  if (n.set_str(std::string(num), 10) != 0 || d.set_str(std::string(den), 10) != 0)
    throw std::invalid_argument("malformed integer in rational: " + std::string(num) + "/" +
                                std::string(den));
  if (d == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return from_parts(text.substr(0, slash), text.substr(slash + 1));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed decimal literal: " + std::string(text));
    std::string den = "1" + std::string(frac.size(), '0');
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    // "-0.5" becomes "-05"/"10"; the sign rides on the digit string.
    return from_parts(digits + frac, den);
  }
  return from_parts(text, "1");
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow2_inv(unsigned k) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  return Rational(mpq_class(mpz_class(1), den));
}

Rational pow(const Rational& b, unsigned e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), b.raw().get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), b.raw().get_den_mpz_t(), e);
  return Rational(mpq_class(n, d));
}

SqrtEnclosure sqrt_enclosure(const Rational& q, unsigned long scale) {
  if (q.sign() < 0) throw std::domain_error("square root of a negative rational");
  const mpz_class& n = q.raw().get_num();
  const mpz_class& d = q.raw().get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class rn = sqrt(n), rd = sqrt(d);
    Rational r(mpq_class(rn, rd));
    return {r, r};
  }
  // sqrt(n/d) = sqrt(n*d)/d; scale the radicand so the floor is fine enough.
  mpz_class s(static_cast<unsigned long>(scale));
  mpz_class radicand = n * d * s * s;
  mpz_class root = sqrt(radicand);
  mpz_class den = d * s;
  return {Rational(mpq_class(root, den)), Rational(mpq_class(root + 1, den))};
}

}  // namespace continua
