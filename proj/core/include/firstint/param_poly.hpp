#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "firstint/rational.hpp"
#include "firstint/term_list.hpp"

namespace firstint {

/// Element of Q[t1..tm]: exact sparse polynomial in the family parameters.
/// This is the coefficient ring of parametric mode. It is an integral
/// domain, not a field; only nonzero constants are units.
class ParamPoly {
public:
  ParamPoly() = default;
  ParamPoly(long c) : ParamPoly(Rational(c)) {}  // NOLINT: implicit by design
  explicit ParamPoly(const Rational& c, std::size_t nparams = 0) : nparams_(nparams) {
    terms_ = List::monomial(MultiIndex(nparams), c);
  }

  static ParamPoly monomial(MultiIndex texp, Rational c) {
    ParamPoly p;
    p.nparams_ = texp.nvars();
    p.terms_ = List::monomial(std::move(texp), std::move(c));
    return p;
  }

  /// The parameter t_k (1-based), as a polynomial in `nparams` variables.
  static ParamPoly variable(std::size_t k, std::size_t nparams) {
    MultiIndex m(nparams);
    m[k - 1] = 1;
    return monomial(std::move(m), Rational(1));
  }

  /// Grammar: sum of "(p/q) t1^b1 t2^b2 ..." groups; a bare rational is the
  /// constant term. Exponent 1 may be written "t2". Example:
  /// "(1/2) t1^2 + (-1/3) t1 t2 + 4".
  static ParamPoly parse(std::string_view text, std::size_t nparams,
                         std::size_t offset_base = 0);

  std::size_t nparams() const { return nparams_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return is_constant() && constant_term().is_one(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
  }

  /// Total degree in t; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  Rational constant_term() const { return terms_.coeff(MultiIndex(nparams_)); }

  /// Exact evaluation at a rational parameter point.
  Rational evaluate(std::span<const Rational> t) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (std::size_t k = 0; k < m.nvars(); ++k)
        for (std::uint32_t e = 0; e < m[k]; ++e) v *= t[k];
      acc += v;
    }
    return acc;
  }

  std::string str() const;

  friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    return wrap(a.terms_.plus(b.terms_), std::max(a.nparams_, b.nparams_));
  }
  friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) {
    return wrap(a.terms_.minus(b.terms_), std::max(a.nparams_, b.nparams_));
  }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    return wrap(a.terms_.times(b.terms_), std::max(a.nparams_, b.nparams_));
  }
  ParamPoly operator-() const { return wrap(terms_.negated(), nparams_); }

  ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
  ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

  using List = TermList<Rational, GrlexOrder>;
  const List& terms() const { return terms_; }

private:
  static ParamPoly wrap(List l, std::size_t nparams) {
    ParamPoly p;
    p.terms_ = std::move(l);
    p.nparams_ = nparams;
    return p;
  }

  List terms_;
  std::size_t nparams_ = 0;
};

}  // namespace firstint
