#pragma once

#include <string>
#include <vector>

#include "firstint/system.hpp"

namespace firstint {

/// The curve of singular points through the origin: x2 = phi(x1), the unique
/// solution of B x2 + f2(x1, x2) = 0 with phi(0) = 0, phi'(0) = 0. Each
/// component is a univariate series in x1 (stored in the full variable
/// space), complete through the working degree.
template <typename R>
struct CenterCurve {
  std::vector<GradedSeries<R>> phi;  // n-1 components, order >= 2
  int trunc = 0;
};

/// Decision of the nonisolatedness test, carrying its truncation bound.
struct Verdict {
  bool nonisolated = false;
  int degree = 0;       // the bound N, or the first degree with g != 0
  std::string witness;  // offending coefficient of g (exact), empty if none
};

/// The system after the center shift, in the factored normal shape
///   y1'  = F1(y) y2,
///   y2'  = B y2 + F2(y) y2,
/// with F1 a row vector and F2 a square matrix of series, every entry of
/// order >= 1 and complete through trunc-1.
template <typename R>
struct FactoredSystem {
  std::size_t n = 0;
  std::size_t nparams = 0;
  int trunc = 0;
  Matrix<R> B;
  std::vector<GradedSeries<R>> F1;               // length n-1
  std::vector<std::vector<GradedSeries<R>>> F2;  // (n-1) x (n-1)
};

namespace reduction_detail {

/// Substitution arguments (x1, phi_1, ..., phi_{n-1}) for evaluating f on
/// the candidate center curve.
template <typename R>
std::vector<GradedSeries<R>> on_curve_args(const CenterCurve<R>& curve, std::size_t n,
                                           int trunc) {
  std::vector<GradedSeries<R>> args;
  args.reserve(n);
  args.push_back(GradedSeries<R>::variable(1, n, trunc));
  for (const auto& p : curve.phi) args.push_back(p.truncated(trunc));
  return args;
}

/// Assigns every monomial to the column of its smallest-index variable among
/// y2..yn with positive exponent, dividing out one power. This is the
/// canonical (reproducible) choice among the non-unique factorizations
/// G = sum_j out[j] * y_{j+1}.
template <typename R>
std::vector<GradedSeries<R>> factor_columns(const GradedSeries<R>& g, std::size_t n) {
  std::vector<GradedSeries<R>> out(n - 1, GradedSeries<R>(n, g.trunc() > 0 ? g.trunc() - 1 : 0));
  for (const auto& [d, h] : g.components()) {
    for (const auto& [m, c] : h.terms()) {
      std::size_t j = 1;
      while (j < n && m[j] == 0) ++j;
      if (j == n) throw NonVanishingOnCenter(d);
      out[j - 1].accumulate(m.decremented(j), c);
    }
  }
  return out;
}

}  // namespace reduction_detail

/// Degree-by-degree implicit solve: at degree d the triangular system
/// B c = -[f2(x1, phi)]_d is solved by forward substitution, using only
/// components of phi below d. Existence and uniqueness come from the
/// invertibility of B.
template <typename R>
CenterCurve<R> solve_implicit(const SystemSpec<R>& spec) {
  const std::size_t k = spec.n - 1;
  const int N = spec.trunc;
  CenterCurve<R> curve;
  curve.trunc = N;
  curve.phi.assign(k, GradedSeries<R>(spec.n, N));

  for (int d = 2; d <= N; ++d) {
    auto args = reduction_detail::on_curve_args(curve, spec.n, d);
    MultiIndex pure(spec.n);
    pure[0] = static_cast<std::uint32_t>(d);
    std::vector<R> rhs(k);
    for (std::size_t i = 0; i < k; ++i)
      rhs[i] = -spec.f2[i].substitute(args, d).component(d).coeff(pure);

    std::vector<R> c(k);
    for (std::size_t i = 0; i < k; ++i) {
      R acc = rhs[i];
      for (std::size_t j = 0; j < i; ++j) acc -= spec.B.at(i, j) * c[j];
      auto inv = RingOps<R>::unit_inverse(spec.B.at(i, i));
      if (!inv) throw ZeroEigenvalue(static_cast<int>(i + 1));
      c[i] = acc * *inv;
    }
    for (std::size_t i = 0; i < k; ++i) curve.phi[i].accumulate(pure, c[i]);
  }
  return curve;
}

/// B phi + f2(x1, phi), exact through the truncation. All components are
/// identically zero for a correct curve; exposed so callers and tests can
/// check the invariant directly.
template <typename R>
std::vector<GradedSeries<R>> center_residual(const SystemSpec<R>& spec,
                                             const CenterCurve<R>& curve) {
  const std::size_t k = spec.n - 1;
  const int N = spec.trunc;
  auto args = reduction_detail::on_curve_args(curve, spec.n, N);
  std::vector<GradedSeries<R>> res;
  res.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    GradedSeries<R> acc = spec.f2[i].substitute(args, N);
    for (std::size_t j = 0; j < k; ++j)
      acc = acc.plus(curve.phi[j].scaled(spec.B.at(i, j)));
    res.push_back(std::move(acc));
  }
  return res;
}

/// Computes g(x1) = f1(x1, phi(x1)) through degree N. The singularity is
/// nonisolated (through the truncation) iff g vanishes identically; the
/// first nonzero coefficient, otherwise, is the witness. In parametric mode
/// "nonzero" means a nonzero polynomial in t.
template <typename R>
Verdict nonisolated_check(const SystemSpec<R>& spec, const CenterCurve<R>& curve) {
  const int N = spec.trunc;
  auto args = reduction_detail::on_curve_args(curve, spec.n, N);
  GradedSeries<R> g = spec.f1.substitute(args, N);
  for (const auto& [d, h] : g.components()) {
    if (h.is_zero()) continue;
    MultiIndex pure(spec.n);
    pure[0] = static_cast<std::uint32_t>(d);
    Verdict v;
    v.nonisolated = false;
    v.degree = d;
    v.witness = RingOps<R>::str(h.coeff(pure));
    return v;
  }
  Verdict v;
  v.nonisolated = true;
  v.degree = N;
  return v;
}

/// Applies the center shift y1 = x1, y2 = x2 - phi(x1) and factors the
/// shifted right-hand sides through the canonical column rule. Requires the
/// nonisolatedness check to have passed; a surviving pure-y1 term raises
/// NonVanishingOnCenter.
template <typename R>
FactoredSystem<R> shift_and_factor(const SystemSpec<R>& spec, const CenterCurve<R>& curve) {
  const std::size_t k = spec.n - 1;
  const int N = spec.trunc;

  // x1 = y1, x_{j+1} = y_{j+1} + phi_j(y1).
  std::vector<GradedSeries<R>> args;
  args.reserve(spec.n);
  args.push_back(GradedSeries<R>::variable(1, spec.n, N));
  for (std::size_t j = 0; j < k; ++j)
    args.push_back(GradedSeries<R>::variable(j + 2, spec.n, N).plus(curve.phi[j].truncated(N)));

  GradedSeries<R> g1 = spec.f1.substitute(args, N);  // = y1' after the shift

  FactoredSystem<R> fs;
  fs.n = spec.n;
  fs.nparams = spec.nparams;
  fs.trunc = N;
  fs.B = spec.B;
  fs.F1 = reduction_detail::factor_columns(g1, spec.n);
  fs.F2.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    // y2_i' - (B y2)_i = B_i. phi + f2_i(shift) - phi_i' * y1'.
    GradedSeries<R> ni = spec.f2[i].substitute(args, N);
    for (std::size_t j = 0; j < k; ++j)
      ni = ni.plus(curve.phi[j].truncated(N).scaled(spec.B.at(i, j)));
    ni = ni.minus(curve.phi[i].partial(1).times(g1, N));
    fs.F2.push_back(reduction_detail::factor_columns(ni, spec.n));
  }
  return fs;
}

/// sum_j F1[j] * y_{j+1}: the scalar series F1(y) y2, i.e. the factored y1'.
template <typename R>
GradedSeries<R> reconstruct_f1(const FactoredSystem<R>& fs) {
  GradedSeries<R> acc(fs.n, fs.trunc);
  for (std::size_t j = 0; j < fs.F1.size(); ++j)
    acc = acc.plus(
        fs.F1[j].times(GradedSeries<R>::variable(j + 2, fs.n, fs.trunc), fs.trunc));
  return acc;
}

/// (F2(y) y2)_i: the nonlinear part of the factored y2_i'.
template <typename R>
GradedSeries<R> reconstruct_f2_row(const FactoredSystem<R>& fs, std::size_t i) {
  GradedSeries<R> acc(fs.n, fs.trunc);
  for (std::size_t j = 0; j < fs.F2[i].size(); ++j)
    acc = acc.plus(
        fs.F2[i][j].times(GradedSeries<R>::variable(j + 2, fs.n, fs.trunc), fs.trunc));
  return acc;
}

}  // namespace firstint
