#pragma once

#include <optional>
#include <string>
#include <vector>

#include "firstint/system.hpp"

namespace firstint {

/// Record of the divisors <m~, lambda~> the solver actually divided by.
/// Entries are deduplicated per (degree, m~) and appended in first-use
/// order, which is deterministic. Magnitudes are exact: |.| over Q and the
/// parametric ring, |.|^2 over Q(i).
struct SmallDivisorLog {
  struct Entry {
    int degree = 0;
    std::vector<int> mtilde;
    std::string value;
    Rational magnitude;
  };

  std::vector<Entry> entries;
  std::optional<std::size_t> min_index;

  void note(int degree, std::vector<int> mtilde, std::string value, Rational magnitude) {
    for (const auto& e : entries)
      if (e.degree == degree && e.mtilde == mtilde) return;
    entries.push_back({degree, std::move(mtilde), std::move(value), std::move(magnitude)});
    if (!min_index || entries.back().magnitude < entries[*min_index].magnitude)
      min_index = entries.size() - 1;
  }

  const Entry* minimum() const { return min_index ? &entries[*min_index] : nullptr; }
};

/// L(p) = <B y2, dp/dy2> = sum_i (B y2)_i dp/dy_{i+1}: the Lie derivative of
/// p along the linear block. Maps degree-d homogeneous polynomials to
/// degree-d homogeneous polynomials and annihilates pure powers of y1.
template <typename R>
HomoPoly<R> apply_L(const HomoPoly<R>& p, const Matrix<R>& B) {
  HomoPoly<R> out(p.nvars(), p.degree());
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 1; i < p.nvars(); ++i) {
      if (m[i] == 0) continue;
      const std::size_t row = i - 1;
      R dc = c * R(static_cast<long>(m[i]));
      MultiIndex base = m.decremented(i);
      for (std::size_t col = 0; col <= row; ++col) {
        const R& b = B.at(row, col);
        if (b.is_zero()) continue;
        out.accumulate(base.incremented(col + 1), dc * b);
      }
    }
  }
  return out;
}

namespace homological_detail {

/// The strictly-lower-triangular part of L. Each application moves one unit
/// of exponent from a variable y_{i+1} to some y_{j+1} with j < i, which
/// strictly increases the monomial in PhaseOrder; on a fixed degree the
/// operator is therefore nilpotent.
template <typename R>
HomoPoly<R> apply_L_strict(const HomoPoly<R>& p, const Matrix<R>& B) {
  HomoPoly<R> out(p.nvars(), p.degree());
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 2; i < p.nvars(); ++i) {
      if (m[i] == 0) continue;
      const std::size_t row = i - 1;
      R dc = c * R(static_cast<long>(m[i]));
      MultiIndex base = m.decremented(i);
      for (std::size_t col = 0; col < row; ++col) {
        const R& b = B.at(row, col);
        if (b.is_zero()) continue;
        out.accumulate(base.incremented(col + 1), dc * b);
      }
    }
  }
  return out;
}

/// Inverse of the diagonal part: termwise division by <m~, lambda~>. Every
/// divisor is logged; an exact zero is a resonance the certificate should
/// have excluded.
template <typename R>
HomoPoly<R> divide_diagonal(const HomoPoly<R>& p, const Matrix<R>& B, SmallDivisorLog* log) {
  HomoPoly<R> out(p.nvars(), p.degree());
  for (const auto& [m, c] : p.terms()) {
    R ev = eigenvalue_of(m, B);
    auto inv = RingOps<R>::unit_inverse(ev);
    if (!inv) {
      std::vector<int> mt(m.nvars() - 1);
      for (std::size_t j = 1; j < m.nvars(); ++j) mt[j - 1] = static_cast<int>(m[j]);
      throw ResonanceViolation(std::move(mt));
    }
    if (log) {
      std::vector<int> mt(m.nvars() - 1);
      for (std::size_t j = 1; j < m.nvars(); ++j) mt[j - 1] = static_cast<int>(m[j]);
      log->note(p.degree(), std::move(mt), RingOps<R>::str(ev),
                RingOps<R>::divisor_magnitude(ev));
    }
    out.accumulate(m, c * *inv);
  }
  return out;
}

}  // namespace homological_detail

struct SolveStats {
  std::uint64_t nilpotent_iterations = 0;
  std::uint64_t iteration_bound = 0;
};

/// Solves L(H) = rhs on the complement of the kernel span{y1^d}: rhs must
/// carry no pure y1^d monomial, and the returned H carries none either,
/// which pins the unique normalized solution.
///
/// Split L = L_D + L_N with L_D the diagonal of B (eigenvalue <m~, lambda~>
/// on each monomial) and L_N the strictly lower part; then
///   H = sum_{k>=0} (-L_D^-1 L_N)^k L_D^-1 rhs,
/// a finite sum because L_N is nilpotent per degree. The iteration count is
/// asserted against the monomial count of the degree.
template <typename R>
HomoPoly<R> solve_homological(const HomoPoly<R>& rhs, const Matrix<R>& B,
                              SmallDivisorLog* log = nullptr,
                              SolveStats* stats = nullptr) {
  if (rhs.has_pure_first_term()) throw KernelComponentInRHS(rhs.degree());

  const std::uint64_t bound = monomial_count(rhs.nvars(), rhs.degree());
  HomoPoly<R> u = homological_detail::divide_diagonal(rhs, B, log);
  HomoPoly<R> acc = u;
  std::uint64_t iter = 0;
  while (!u.is_zero()) {
    HomoPoly<R> lnu = homological_detail::apply_L_strict(u, B);
    if (lnu.is_zero()) break;
    if (++iter > bound)
      throw InternalError("nilpotent correction exceeded the monomial-count bound");
    u = homological_detail::divide_diagonal(lnu, B, log).negated();
    acc = acc.plus(u);
  }
  if (stats) {
    stats->nilpotent_iterations = iter;
    stats->iteration_bound = bound;
  }
  return acc;
}

}  // namespace firstint
