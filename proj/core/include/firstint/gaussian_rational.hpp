#pragma once

#include <string>
#include <string_view>

#include "firstint/rational.hpp"

namespace firstint {

/// Element of Q(i): a pair of exact rationals. A field; inversion goes
/// through the conjugate and the rational norm re^2 + im^2.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0))
      : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long n) : re_(n) {}  // NOLINT: implicit by design

  /// Accepts "p/q" and "p/q+r/s i" (also with '-' before the imaginary
  /// part; the blank before 'i' is optional).
  static GaussianRational parse(std::string_view text, std::size_t offset_base = 0);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  /// |z|^2 as an exact rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational conjugate() const { return {re_, -im_}; }

  GaussianRational inverse() const {
    Rational n = norm();
    if (n.is_zero()) throw InternalError("inverse of zero Gaussian rational");
    Rational ninv = n.inverse();
    return {re_ * ninv, -im_ * ninv};
  }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    if (im_.sign() > 0) return re_.str() + "+" + im_.str() + " i";
    return re_.str() + "-" + (-im_).str() + " i";
  }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

private:
  Rational re_;
  Rational im_;
};

}  // namespace firstint
