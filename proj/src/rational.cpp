#include "fekete/rational.hpp"

#include <utility>

namespace fekete {

Rational Rational::from_integers(const mpz_class& num, const mpz_class& den) {
  if (den == 0) {
    throw ZeroDenominator("denominator is zero");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_string(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num_part = text.substr(0, slash);
  mpz_class num;
  if (num_part.empty() || mpz_set_str(num.get_mpz_t(), num_part.c_str(), 10) != 0) {
    throw ParseError("not a rational literal", 0);
  }
  if (slash == std::string::npos) {
    return Rational(num);
  }
  const std::string den_part = text.substr(slash + 1);
  mpz_class den;
  if (den_part.empty() || mpz_set_str(den.get_mpz_t(), den_part.c_str(), 10) != 0) {
    throw ParseError("not a rational literal", slash + 1);
  }
  return from_integers(num, den);
}

Rational Rational::pow2(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k < 0 ? -k : k));
  if (k < 0) {
    return from_integers(1, p);
  }
  return Rational(p);
}

mpz_class Rational::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational Rational::operator+(const Rational& o) const {
  return Rational(mpq_class(q_ + o.q_));
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(mpq_class(q_ - o.q_));
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(mpq_class(q_ * o.q_));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.sign() == 0) {
    throw DivisionByZero("division by zero rational");
  }
  return Rational(mpq_class(q_ / o.q_));
}

std::string Rational::to_string() const {
  if (is_integer()) {
    return num().get_str();
  }
  return num().get_str() + "/" + den().get_str();
}

std::string Rational::decimal(std::size_t digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled_num = num() * scale;
  if (scaled_num < 0) {
    scaled_num = -scaled_num;
  }
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(),
              den().get_mpz_t());
  if (2 * rem >= den()) {
    quot += 1;
  }
  std::string body = quot.get_str();
  if (body.size() <= digits) {
    body.insert(0, digits + 1 - body.size(), '0');
  }
  if (digits > 0) {
    body.insert(body.size() - digits, ".");
  }
  if (sign() < 0 && quot != 0) {
    body.insert(0, "-");
  }
  return body;
}

Ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return Ordering::less;
  if (b < a) return Ordering::greater;
  return Ordering::equal;
}

Dyadic::Dyadic(const mpz_class& mantissa, long exponent)
    : mant_(mantissa), exp_(exponent) {
  if (mant_ == 0) {
    exp_ = 0;
    return;
  }
  while (mpz_even_p(mant_.get_mpz_t())) {
    mant_ /= 2;
    ++exp_;
  }
}

Rational Dyadic::to_rational() const {
  return Rational(mant_) * Rational::pow2(exp_);
}

}  // namespace fekete
