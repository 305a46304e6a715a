#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "firstint/gaussian_rational.hpp"
#include "firstint/param_poly.hpp"
#include "firstint/rational.hpp"

namespace firstint {

enum class RingId { Q, Qi, Qt };

inline const char* ring_name(RingId id) {
  switch (id) {
    case RingId::Q: return "Q";
    case RingId::Qi: return "Qi";
    case RingId::Qt: return "Qt";
  }
  return "?";
}

inline std::optional<RingId> ring_from_name(std::string_view s) {
  if (s == "Q") return RingId::Q;
  if (s == "Qi") return RingId::Qi;
  if (s == "Qt") return RingId::Qt;
  return std::nullopt;
}

/// The per-ring behavior the generic layers need beyond plain arithmetic:
/// literal parsing, canonical strings, unit inversion (the homological solve
/// divides only by units), and the exact magnitude used to compare and log
/// small divisors.
template <typename R>
struct RingOps;

template <>
struct RingOps<Rational> {
  static constexpr RingId id = RingId::Q;
  static constexpr bool parametric = false;

  static Rational parse(std::string_view s, std::size_t nparams, std::size_t at = 0) {
    (void)nparams;
    return Rational::parse(s, at);
  }
  static std::string str(const Rational& x) { return x.str(); }
  static Rational from_rational(const Rational& q, std::size_t) { return q; }
  static std::optional<Rational> unit_inverse(const Rational& x) {
    if (x.is_zero()) return std::nullopt;
    return x.inverse();
  }
  /// |x|, exact.
  static Rational divisor_magnitude(const Rational& x) { return x.abs(); }
  static double to_double(const Rational& x) { return x.to_double(); }
  static bool coeff_needs_parens(const Rational&) { return false; }
};

template <>
struct RingOps<GaussianRational> {
  static constexpr RingId id = RingId::Qi;
  static constexpr bool parametric = false;

  static GaussianRational parse(std::string_view s, std::size_t nparams, std::size_t at = 0) {
    (void)nparams;
    return GaussianRational::parse(s, at);
  }
  static std::string str(const GaussianRational& x) { return x.str(); }
  static GaussianRational from_rational(const Rational& q, std::size_t) {
    return GaussianRational(q);
  }
  static std::optional<GaussianRational> unit_inverse(const GaussianRational& x) {
    if (x.is_zero()) return std::nullopt;
    return x.inverse();
  }
  /// |x|^2, exact (keeps the magnitude inside Q).
  static Rational divisor_magnitude(const GaussianRational& x) { return x.norm(); }
  static double to_double(const GaussianRational& x) { return std::sqrt(x.norm().to_double()); }
  static bool coeff_needs_parens(const GaussianRational& x) { return !x.is_real(); }
};

template <>
struct RingOps<ParamPoly> {
  static constexpr RingId id = RingId::Qt;
  static constexpr bool parametric = true;

  static ParamPoly parse(std::string_view s, std::size_t nparams, std::size_t at = 0) {
    return ParamPoly::parse(s, nparams, at);
  }
  static std::string str(const ParamPoly& x) { return x.str(); }
  static ParamPoly from_rational(const Rational& q, std::size_t nparams) {
    return ParamPoly(q, nparams);
  }
  /// Only nonzero constants are invertible in Q[t].
  static std::optional<ParamPoly> unit_inverse(const ParamPoly& x) {
    if (!x.is_constant() || x.is_zero()) return std::nullopt;
    return ParamPoly(x.constant_term().inverse(), x.nparams());
  }
  /// Magnitude of a constant; the eigenvalues of B stay numeric even in
  /// parametric mode, so every divisor reaching this is constant.
  static Rational divisor_magnitude(const ParamPoly& x) {
    if (!x.is_constant())
      throw InternalError("divisor magnitude requested for a non-constant parameter polynomial");
    return x.constant_term().abs();
  }
  static double to_double(const ParamPoly& x) {
    if (!x.is_constant())
      throw InternalError("float conversion of a non-constant parameter polynomial");
    return x.constant_term().to_double();
  }
  /// Single parametric monomials already render as "(p/q) t1^b1 ..." and are
  /// unambiguous inside a polynomial term; only sums need outer parentheses.
  static bool coeff_needs_parens(const ParamPoly& x) { return x.terms().size() > 1; }
};

}  // namespace firstint
