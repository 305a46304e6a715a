#pragma once

#include <string>
#include <vector>

#include "firstint/homological.hpp"
#include "firstint/poly_text.hpp"
#include "firstint/reduction.hpp"

namespace firstint {

/// The truncated formal first integral H = y1 + sum_{s>=2} H_s, together
/// with the divisors met while solving and the first nonzero degrees of the
/// Lie derivative above the truncation.
template <typename R>
struct FirstIntegral {
  GradedSeries<R> components;  // H_1 = y1, then H_2 .. H_N
  int trunc = 0;
  SmallDivisorLog divisors;
  GradedSeries<R> residual_tail;  // X(H) for degrees N+1 .. N+deg_max(F)
};

/// The nonlinear field components, materialized once as graded series and
/// reused across every degree of the recursion:
///   g1    = F1(y) y2            (the full y1' right-hand side),
///   g2[i] = (F2(y) y2)_i        (the nonlinear part of y2_i').
template <typename R>
struct FieldComponents {
  std::size_t n = 0;
  int trunc = 0;
  GradedSeries<R> g1;
  std::vector<GradedSeries<R>> g2;
};

template <typename R>
FieldComponents<R> field_components(const FactoredSystem<R>& fs) {
  FieldComponents<R> f;
  f.n = fs.n;
  f.trunc = fs.trunc;
  f.g1 = reconstruct_f1(fs);
  f.g2.reserve(fs.n - 1);
  for (std::size_t i = 0; i + 1 < fs.n; ++i) f.g2.push_back(reconstruct_f2_row(fs, i));
  return f;
}

/// Right-hand side of the degree-(1+s) homological equation:
///   -sum_{j=1..s} [ <F_2j y2, dH_{1+s-j}/dy2> + F_1j y2 dH_{1+s-j}/dy1 ],
/// assembled from the homogeneous pieces of the field and the components of
/// H already computed. Lies in the y2-ideal by construction.
template <typename R>
HomoPoly<R> rhs_at_degree(int s, const FieldComponents<R>& f, const GradedSeries<R>& h) {
  const int d = 1 + s;
  HomoPoly<R> acc(f.n, d);
  for (int j = 1; j <= s; ++j) {
    const HomoPoly<R> hprev = h.component(1 + s - j);
    if (hprev.is_zero()) continue;
    if (f.g1.has_component(j + 1)) {
      HomoPoly<R> dh = hprev.partial(1);
      if (!dh.is_zero()) acc = acc.plus(f.g1.component(j + 1).times(dh));
    }
    for (std::size_t i = 0; i + 1 < f.n; ++i) {
      if (!f.g2[i].has_component(j + 1)) continue;
      HomoPoly<R> dh = hprev.partial(i + 2);
      if (!dh.is_zero()) acc = acc.plus(f.g2[i].component(j + 1).times(dh));
    }
  }
  return acc.negated();
}

/// X(H): the exact Lie derivative of the series H along the factored system,
/// expanded through degree `up_to`. The linear block contributes apply_L on
/// each component; the nonlinear components couple degrees.
template <typename R>
GradedSeries<R> lie_derivative(const GradedSeries<R>& h, const FactoredSystem<R>& fs,
                               int up_to) {
  GradedSeries<R> out(fs.n, up_to);
  FieldComponents<R> f = field_components(fs);

  for (const auto& [d, hd] : h.components()) {
    if (d <= up_to) {
      HomoPoly<R> lin = apply_L(hd, fs.B);
      if (!lin.is_zero()) out.set_component(out.component(d).plus(lin));
    }
    HomoPoly<R> dh1 = hd.partial(1);
    std::vector<HomoPoly<R>> dh2;
    dh2.reserve(fs.n - 1);
    for (std::size_t i = 0; i + 1 < fs.n; ++i) dh2.push_back(hd.partial(i + 2));

    auto fold = [&](const GradedSeries<R>& g, const HomoPoly<R>& dh) {
      if (dh.is_zero()) return;
      for (const auto& [dg, gpiece] : g.components()) {
        int dtot = dg + dh.degree();
        if (dtot > up_to) break;
        HomoPoly<R> prod = gpiece.times(dh);
        if (!prod.is_zero()) out.set_component(out.component(dtot).plus(prod));
      }
    };
    fold(f.g1, dh1);
    for (std::size_t i = 0; i + 1 < fs.n; ++i) fold(f.g2[i], dh2[i]);
  }
  return out;
}

/// The Lemma-3.1 driver. H_1 = y1; for s = 1 .. N-1 the degree-(1+s)
/// component is the normalized homological solution of rhs_at_degree(s).
/// On return the Lie derivative of H vanishes identically through degree N
/// (checked, exact) and its first surviving degrees are kept for
/// diagnostics.
template <typename R>
FirstIntegral<R> compute_first_integral(const FactoredSystem<R>& fs) {
  const int N = fs.trunc;
  FirstIntegral<R> result;
  result.trunc = N;
  result.components = GradedSeries<R>(fs.n, N);
  result.components.set_component(HomoPoly<R>::variable(1, fs.n));

  FieldComponents<R> f = field_components(fs);
  for (int s = 1; s <= N - 1; ++s) {
    HomoPoly<R> rhs = rhs_at_degree(s, f, result.components);
    if (rhs.is_zero()) continue;
    result.components.set_component(solve_homological(rhs, fs.B, &result.divisors));
  }

  int tail_max = N > 1 ? 2 * N - 1 : N;
  GradedSeries<R> resid = lie_derivative(result.components, fs, tail_max);
  for (const auto& [d, h] : resid.components()) {
    if (d <= N && !h.is_zero())
      throw InternalError("first-integral residual is nonzero at degree " +
                          std::to_string(d));
  }
  result.residual_tail = GradedSeries<R>(fs.n, tail_max);
  for (const auto& [d, h] : resid.components())
    if (d > N) result.residual_tail.set_component(h);
  return result;
}

/// Structural report on the parametric coefficients of H: for every s >= 2,
/// each coefficient of H_s must be a polynomial in t of total degree at most
/// s-1 with zero constant term. Violations indicate an engine bug, not a
/// property of the input family.
struct ParamStructureReport {
  struct Violation {
    int degree = 0;
    std::string monomial;
    std::string coeff;
    std::string reason;
  };
  bool ok = true;
  std::vector<Violation> violations;
  std::vector<std::pair<int, int>> max_tdegree;  // (degree s, max deg_t over H_s)
};

inline ParamStructureReport verify_param_structure(const FirstIntegral<ParamPoly>& h) {
  ParamStructureReport rep;
  for (const auto& [s, hs] : h.components.components()) {
    if (s < 2) continue;
    int maxd = -1;
    for (const auto& [m, c] : hs.terms()) {
      maxd = std::max(maxd, c.degree());
      if (c.degree() > s - 1) {
        rep.ok = false;
        rep.violations.push_back({s, poly_text_detail::monomial_text(m), c.str(),
                                  "t-degree " + std::to_string(c.degree()) + " exceeds " +
                                      std::to_string(s - 1)});
      }
      if (!c.constant_term().is_zero()) {
        rep.ok = false;
        rep.violations.push_back(
            {s, poly_text_detail::monomial_text(m), c.str(), "nonzero constant term"});
      }
    }
    rep.max_tdegree.emplace_back(s, maxd);
  }
  return rep;
}

}  // namespace firstint
