#pragma once

#include <span>
#include <vector>

#include "firstint/integral.hpp"

namespace firstint {

/// Exact specialization of parametric objects at a rational parameter point.
/// Specializing first and computing numerically commutes with computing over
/// Q[t] and specializing afterwards; that identity is part of the test
/// suite.

inline HomoPoly<Rational> specialize(const HomoPoly<ParamPoly>& p,
                                     std::span<const Rational> t) {
  HomoPoly<Rational> out(p.nvars(), p.degree());
  for (const auto& [m, c] : p.terms()) out.accumulate(m, c.evaluate(t));
  return out;
}

inline GradedSeries<Rational> specialize(const GradedSeries<ParamPoly>& s,
                                         std::span<const Rational> t) {
  GradedSeries<Rational> out(s.nvars(), s.trunc());
  for (const auto& [d, h] : s.components()) {
    HomoPoly<Rational> sp = specialize(h, t);
    if (!sp.is_zero()) out.set_component(std::move(sp));
  }
  return out;
}

inline Matrix<Rational> specialize(const Matrix<ParamPoly>& b, std::span<const Rational> t) {
  Matrix<Rational> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out.at(i, j) = b.at(i, j).evaluate(t);
  return out;
}

inline SystemSpec<Rational> specialize(const SystemSpec<ParamPoly>& spec,
                                       std::span<const Rational> t) {
  SystemSpec<Rational> out;
  out.n = spec.n;
  out.nparams = 0;
  out.trunc = spec.trunc;
  out.B = specialize(spec.B, t);
  out.f1 = specialize(spec.f1, t);
  out.f2.reserve(spec.f2.size());
  for (const auto& c : spec.f2) out.f2.push_back(specialize(c, t));
  return out;
}

inline FactoredSystem<Rational> specialize(const FactoredSystem<ParamPoly>& fs,
                                           std::span<const Rational> t) {
  FactoredSystem<Rational> out;
  out.n = fs.n;
  out.nparams = 0;
  out.trunc = fs.trunc;
  out.B = specialize(fs.B, t);
  out.F1.reserve(fs.F1.size());
  for (const auto& c : fs.F1) out.F1.push_back(specialize(c, t));
  out.F2.reserve(fs.F2.size());
  for (const auto& row : fs.F2) {
    std::vector<GradedSeries<Rational>> r;
    r.reserve(row.size());
    for (const auto& c : row) r.push_back(specialize(c, t));
    out.F2.push_back(std::move(r));
  }
  return out;
}

}  // namespace firstint
