#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "fekete/errors.hpp"

namespace fekete {

enum class Ordering { less = -1, equal = 0, greater = 1 };

// Arbitrary-precision rational, always in canonical form: denominator
// positive, numerator and denominator coprime, zero stored as 0/1.  Two
// equal values therefore always have identical components.  All arithmetic
// is exact; there is no implicit conversion to or from floating point
// anywhere in the library.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long v) : q_(v) {}  // NOLINT: implicit by design, mirrors int
  explicit Rational(const mpz_class& v) : q_(v) {}

  // Canonicalizes num/den; den may be negative, the sign moves to the
  // numerator.  Throws ZeroDenominator when den == 0.
  static Rational from_integers(const mpz_class& num, const mpz_class& den);

  // Accepts "a" or "a/b" with optional leading minus signs, base 10.
  static Rational from_string(const std::string& text);

  // 2^k for any integer k, also negative k.
  static Rational pow2(long k);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  mpz_class floor() const;
  mpz_class ceil() const;
  Rational abs() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws DivisionByZero

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return a.q_ != b.q_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.q_ < b.q_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.q_ <= b.q_;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return a.q_ > b.q_;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return a.q_ >= b.q_;
  }

  // "a" for integers, "a/b" otherwise.
  std::string to_string() const;

  // Fixed-point decimal rendering with the given number of fraction digits,
  // rounded to nearest with ties away from zero.  Display only; nothing in
  // the library computes with the result.
  std::string decimal(std::size_t digits) const;

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

Ordering compare(const Rational& a, const Rational& b);

// Dyadic value mantissa * 2^exponent in canonical form: mantissa odd, or
// zero with exponent zero.  Used for the exact 2^-M radii of approximation
// certificates.
class Dyadic {
 public:
  Dyadic() : mant_(0), exp_(0) {}
  Dyadic(const mpz_class& mantissa, long exponent);

  // 2^k as a dyadic, any integer k.
  static Dyadic power_of_two(long k) { return Dyadic(1, k); }

  const mpz_class& mantissa() const { return mant_; }
  long exponent() const { return exp_; }

  Rational to_rational() const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) {
    return !(a == b);
  }

 private:
  mpz_class mant_;
  long exp_;
};

// Closed interval with exact rational endpoints; the certified-evaluation
// result type for sequence members that are only approximable.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  // True when every point of this interval is strictly below every point
  // of o; false means "not certified", not "false".
  bool strictly_below(const Interval& o) const { return hi < o.lo; }

  bool inside_open(const Rational& a, const Rational& b) const {
    return a < lo && hi < b;
  }
};

}  // namespace fekete
