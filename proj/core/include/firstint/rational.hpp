#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "firstint/errors.hpp"

namespace firstint {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator (GMP canonical form).
///
/// This is the base coefficient ring of the engine; the Gaussian and
/// parametric rings are built on top of it. All arithmetic is exact.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long num) : v_(num) {}  // NOLINT: implicit by design, mirrors int literals
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw InvalidSystem("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Accepts "p", "p/q" and decimal "p.q" notation, with an optional sign.
  /// `offset_base` shifts reported error positions when parsing a slice of a
  /// larger document.
  static Rational parse(std::string_view text, std::size_t offset_base = 0);

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }

  Rational abs() const { return Rational(::abs(v_)); }
  Rational inverse() const {
    if (is_zero()) throw InternalError("inverse of zero rational");
    return Rational(1 / v_);
  }

  double to_double() const { return v_.get_d(); }

  /// Canonical form: "p" when the denominator is 1, otherwise "p/q".
  std::string str() const { return v_.get_str(); }

  const mpq_class& raw() const { return v_; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InternalError("division of rationals by zero");
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace firstint
