#pragma once

// Independent oracles for the homological solve and the first-integral
// recursion: everything here goes through one dense exact linear system and
// plain Gaussian elimination, with its own dense polynomial arithmetic, so
// it shares no solution path with the engine's graded recursion or the
// diagonal/nilpotent splitting.

#include <map>
#include <vector>

#include "firstint/reduction.hpp"

namespace oracle {

using firstint::FactoredSystem;
using firstint::GradedSeries;
using firstint::HomoPoly;
using firstint::Matrix;
using firstint::MultiIndex;
using firstint::PhaseOrder;
using firstint::RingOps;

/// Monomials of total degree d in n variables that carry at least one
/// y2..yn factor, in PhaseOrder (deterministic).
inline std::vector<MultiIndex> ideal_basis(std::size_t nvars, int degree) {
  std::vector<MultiIndex> basis;
  firstint::for_each_multi_index(nvars, degree, [&](const MultiIndex& m) {
    if (!m.is_pure_first()) basis.push_back(m);
  });
  std::sort(basis.begin(), basis.end(), PhaseOrder{});
  return basis;
}

/// Exact Gaussian elimination with unit pivots (full scan; over a field any
/// nonzero entry qualifies, over Q[t] only constants do, which is always
/// enough here because the diagonal blocks of these systems are numeric).
template <typename R>
std::vector<R> dense_solve(std::vector<std::vector<R>> a, std::vector<R> b) {
  const std::size_t n = b.size();
  std::vector<std::size_t> col_of_row(n, SIZE_MAX);
  std::vector<bool> row_used(n, false), col_used(n, false);

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pr = SIZE_MAX, pc = SIZE_MAX;
    R pinv{};
    for (std::size_t r = 0; r < n && pr == SIZE_MAX; ++r) {
      if (row_used[r]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (col_used[c]) continue;
        if (auto inv = RingOps<R>::unit_inverse(a[r][c])) {
          pr = r;
          pc = c;
          pinv = *inv;
          break;
        }
      }
    }
    if (pr == SIZE_MAX) throw firstint::InternalError("oracle: no unit pivot available");
    row_used[pr] = true;
    col_used[pc] = true;
    col_of_row[pr] = pc;
    for (std::size_t c = 0; c < n; ++c) a[pr][c] = a[pr][c] * pinv;
    b[pr] = b[pr] * pinv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pr || a[r][pc].is_zero()) continue;
      R f = a[r][pc];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = a[r][c] - f * a[pr][c];
      b[r] = b[r] - f * b[pr];
    }
  }
  std::vector<R> x(n);
  for (std::size_t r = 0; r < n; ++r) x[col_of_row[r]] = b[r];
  return x;
}

/// Dense term-map polynomial over an arbitrary scalar ring; the oracle-side
/// arithmetic.
template <typename R>
struct DenseP {
  std::size_t nvars = 0;
  std::map<std::vector<std::uint32_t>, R> c;

  explicit DenseP(std::size_t nv = 0) : nvars(nv) {}

  static DenseP from_series(const GradedSeries<R>& s) {
    DenseP p(s.nvars());
    for (const auto& [d, h] : s.components())
      for (const auto& [m, q] : h.terms()) p.add(m.padded(s.nvars()), q);
    return p;
  }

  void add(const std::vector<std::uint32_t>& e, const R& q) {
    if (q.is_zero()) return;
    auto it = c.find(e);
    if (it == c.end()) {
      c.emplace(e, q);
    } else {
      it->second += q;
      if (it->second.is_zero()) c.erase(it);
    }
  }

  DenseP times(const DenseP& o, int trunc) const {
    DenseP r(nvars);
    for (const auto& [ea, ca] : c)
      for (const auto& [eb, cb] : o.c) {
        std::vector<std::uint32_t> e(nvars);
        long deg = 0;
        for (std::size_t k = 0; k < nvars; ++k) {
          e[k] = ea[k] + eb[k];
          deg += e[k];
        }
        if (deg > trunc) continue;
        r.add(e, ca * cb);
      }
    return r;
  }

  DenseP partial(std::size_t k) const {
    DenseP r(nvars);
    for (const auto& [e, q] : c) {
      if (e[k] == 0) continue;
      auto d = e;
      --d[k];
      r.add(d, q * R(static_cast<long>(e[k])));
    }
    return r;
  }

  static DenseP monomial(std::size_t nvars, const std::vector<std::uint32_t>& e, R q) {
    DenseP p(nvars);
    p.add(e, q);
    return p;
  }
};

/// The coefficient-extraction map X(y^nu) of the full vector field
///   X = g1 d/dy1 + sum_i ((B y2)_i + g2_i) d/dy_{i+1},
/// computed densely and truncated.
template <typename R>
DenseP<R> dense_field_apply(const std::vector<DenseP<R>>& field, const DenseP<R>& p,
                            int trunc) {
  DenseP<R> acc(p.nvars);
  for (std::size_t k = 0; k < field.size(); ++k) {
    DenseP<R> dp = p.partial(k);
    if (dp.c.empty()) continue;
    DenseP<R> prod = field[k].times(dp, trunc);
    for (const auto& [e, q] : prod.c) acc.add(e, q);
  }
  return acc;
}

/// Full field components of a factored system as dense polynomials,
/// including the linear block.
template <typename R>
std::vector<DenseP<R>> dense_field(const FactoredSystem<R>& fs) {
  const std::size_t n = fs.n;
  std::vector<DenseP<R>> field;
  field.reserve(n);
  DenseP<R> g1(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<std::uint32_t> e(n, 0);
    e[j + 1] = 1;
    DenseP<R> yj = DenseP<R>::monomial(n, e, R(1));
    DenseP<R> f1j = DenseP<R>::from_series(fs.F1[j]);
    DenseP<R> prod = f1j.times(yj, fs.trunc);
    for (const auto& [ee, q] : prod.c) g1.add(ee, q);
  }
  field.push_back(std::move(g1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    DenseP<R> gi(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      std::vector<std::uint32_t> e(n, 0);
      e[j + 1] = 1;
      if (!fs.B.at(i, j).is_zero()) gi.add(e, fs.B.at(i, j));
      DenseP<R> f2ij = DenseP<R>::from_series(fs.F2[i][j]);
      DenseP<R> prod = f2ij.times(DenseP<R>::monomial(n, e, R(1)), fs.trunc);
      for (const auto& [ee, q] : prod.c) gi.add(ee, q);
    }
    field.push_back(std::move(gi));
  }
  return field;
}

/// Independent first integral: one dense linear system over all coefficients
/// of degrees 2..N (pure y1 powers excluded), constrained by X(H) = 0 with
/// H = y1 + (unknowns), solved by exact Gaussian elimination.
template <typename R>
GradedSeries<R> oracle_first_integral(const FactoredSystem<R>& fs) {
  const std::size_t n = fs.n;
  const int N = fs.trunc;

  std::vector<MultiIndex> unknowns;
  for (int d = 2; d <= N; ++d) {
    auto basis = ideal_basis(n, d);
    unknowns.insert(unknowns.end(), basis.begin(), basis.end());
  }
  const std::size_t dim = unknowns.size();
  std::map<std::vector<std::uint32_t>, std::size_t> row_of;
  for (std::size_t r = 0; r < dim; ++r) row_of.emplace(unknowns[r].padded(n), r);

  auto field = dense_field(fs);

  std::vector<std::vector<R>> a(dim, std::vector<R>(dim, R{}));
  std::vector<R> b(dim, R{});

  for (std::size_t col = 0; col < dim; ++col) {
    DenseP<R> mono = DenseP<R>::monomial(n, unknowns[col].padded(n), R(1));
    DenseP<R> image = dense_field_apply(field, mono, N);
    for (const auto& [e, q] : image.c) {
      auto it = row_of.find(e);
      if (it == row_of.end()) continue;  // pure y1 rows are identically zero anyway
      a[it->second][col] += q;
    }
  }
  // H = y1 + unknowns: move X(y1) to the right-hand side.
  std::vector<std::uint32_t> y1(n, 0);
  y1[0] = 1;
  DenseP<R> xy1 = dense_field_apply(field, DenseP<R>::monomial(n, y1, R(1)), N);
  for (const auto& [e, q] : xy1.c) {
    auto it = row_of.find(e);
    if (it != row_of.end()) b[it->second] = b[it->second] - q;
  }

  std::vector<R> x = dense_solve(std::move(a), std::move(b));

  GradedSeries<R> h(n, N);
  MultiIndex lead(n);
  lead[0] = 1;
  h.accumulate(lead, R(1));
  for (std::size_t colx = 0; colx < dim; ++colx) h.accumulate(unknowns[colx], x[colx]);
  return h;
}

}  // namespace oracle
