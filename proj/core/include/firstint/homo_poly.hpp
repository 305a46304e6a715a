#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "firstint/term_list.hpp"

namespace firstint {

/// Homogeneous polynomial of a fixed total degree in the phase variables
/// y1..yn, over an exact scalar ring R. Terms are kept in the global
/// monomial order (PhaseOrder); every stored monomial has total degree equal
/// to `degree()` and no zero coefficient is ever stored.
template <typename R>
class HomoPoly {
public:
  using List = TermList<R, PhaseOrder>;

  HomoPoly() = default;
  HomoPoly(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static HomoPoly monomial(MultiIndex m, R c) {
    HomoPoly p(m.nvars(), m.degree());
    p.terms_ = List::monomial(std::move(m), std::move(c));
    return p;
  }

  /// The variable y_k (1-based).
  static HomoPoly variable(std::size_t k, std::size_t nvars) {
    MultiIndex m(nvars);
    m[k - 1] = 1;
    return monomial(std::move(m), R(1));
  }

  std::size_t nvars() const { return nvars_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const List& terms() const { return terms_; }

  R coeff(const MultiIndex& m) const { return terms_.coeff(m); }

  /// True when a pure y1^degree monomial is present (the kernel direction of
  /// the homological operator).
  bool has_pure_first_term() const {
    if (degree_ == 0) return !terms_.empty();
    MultiIndex m(nvars_);
    m[0] = static_cast<std::uint32_t>(degree_);
    return terms_.contains(m);
  }

  void accumulate(const MultiIndex& m, const R& c) {
    if (m.degree() != degree_) throw DegreeMismatch(degree_, m.degree());
    terms_.accumulate(m, c);
  }

  HomoPoly plus(const HomoPoly& o) const {
    require_same_degree(o);
    return wrap(terms_.plus(o.terms_), nvars_, degree_);
  }
  HomoPoly minus(const HomoPoly& o) const {
    require_same_degree(o);
    return wrap(terms_.minus(o.terms_), nvars_, degree_);
  }
  HomoPoly negated() const { return wrap(terms_.negated(), nvars_, degree_); }
  HomoPoly scaled(const R& s) const { return wrap(terms_.scaled(s), nvars_, degree_); }

  HomoPoly times(const HomoPoly& o) const {
    return wrap(terms_.times(o.terms_), nvars_, degree_ + o.degree_);
  }

  /// Formal partial derivative with respect to y_var (1-based). Degree drops
  /// by one; the derivative of a degree-0 polynomial is the zero polynomial.
  HomoPoly partial(std::size_t var) const {
    HomoPoly r(nvars_, degree_ > 0 ? degree_ - 1 : 0);
    if (degree_ == 0) return r;
    const std::size_t k = var - 1;
    for (const auto& [m, c] : terms_) {
      if (m[k] == 0) continue;
      r.terms_.accumulate(m.decremented(k), c * R(static_cast<long>(m[k])));
    }
    return r;
  }

  friend bool operator==(const HomoPoly& a, const HomoPoly& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const HomoPoly& a, const HomoPoly& b) { return !(a == b); }

private:
  static HomoPoly wrap(List l, std::size_t nvars, int degree) {
    HomoPoly p(nvars, degree);
    p.terms_ = std::move(l);
    return p;
  }

  void require_same_degree(const HomoPoly& o) const {
    if (degree_ != o.degree_) throw DegreeMismatch(degree_, o.degree_);
  }

  std::size_t nvars_ = 0;
  int degree_ = 0;
  List terms_;
};

template <typename R>
HomoPoly<R> operator+(const HomoPoly<R>& a, const HomoPoly<R>& b) { return a.plus(b); }
template <typename R>
HomoPoly<R> operator-(const HomoPoly<R>& a, const HomoPoly<R>& b) { return a.minus(b); }
template <typename R>
HomoPoly<R> operator*(const HomoPoly<R>& a, const HomoPoly<R>& b) { return a.times(b); }

}  // namespace firstint
