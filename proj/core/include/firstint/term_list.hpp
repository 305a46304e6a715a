#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "firstint/multi_index.hpp"

namespace firstint {

/// Sparse term container shared by every polynomial type in the engine:
/// a vector of (monomial, coefficient) pairs kept strictly sorted under
/// `Order`, with no zero coefficients ever stored. Binary operations are
/// linear merges; products accumulate into a scratch list and normalize
/// once. Values are immutable in practice -- mutating helpers return fresh
/// objects or are only used while a value is being built.
template <typename R, typename Order>
class TermList {
public:
  using Term = std::pair<MultiIndex, R>;

  TermList() = default;

  static TermList monomial(MultiIndex m, R c) {
    TermList t;
    if (!c.is_zero()) t.terms_.emplace_back(std::move(m), std::move(c));
    return t;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// Coefficient lookup; returns a default-constructed (zero) R when absent.
  R coeff(const MultiIndex& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, key_less);
    if (it != terms_.end() && it->first == m) return it->second;
    return R{};
  }

  bool contains(const MultiIndex& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, key_less);
    return it != terms_.end() && it->first == m;
  }

  /// Add `c * m` in place (used while assembling a value).
  void accumulate(const MultiIndex& m, const R& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, key_less);
    if (it != terms_.end() && it->first == m) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, Term{m, c});
    }
  }

  TermList plus(const TermList& o) const { return merged(o, /*negate=*/false); }
  TermList minus(const TermList& o) const { return merged(o, /*negate=*/true); }

  TermList negated() const {
    TermList r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
    return r;
  }

  TermList scaled(const R& s) const {
    TermList r;
    if (s.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
      R p = c * s;
      if (!p.is_zero()) r.terms_.emplace_back(m, std::move(p));
    }
    return r;
  }

  /// Multiply every term by the single monomial `m` (exponent shift).
  TermList shifted(const MultiIndex& m) const {
    TermList r;
    r.terms_.reserve(terms_.size());
    for (const auto& [mm, c] : terms_) r.terms_.emplace_back(mm + m, c);
    return r;  // shifting by a fixed monomial preserves the strict order
  }

  /// Full convolution product. `keep` filters result monomials (used for
  /// degree truncation); pass nullptr to keep everything.
  template <typename Keep>
  TermList times(const TermList& o, Keep&& keep) const {
    TermList acc;
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        MultiIndex m = ma + mb;
        if (!keep(m)) continue;
        acc.accumulate(m, ca * cb);
      }
    }
    return acc;
  }

  TermList times(const TermList& o) const {
    return times(o, [](const MultiIndex&) { return true; });
  }

  friend bool operator==(const TermList& a, const TermList& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const TermList& a, const TermList& b) { return !(a == b); }

private:
  static bool key_less(const Term& t, const MultiIndex& m) { return Order{}(t.first, m); }

  TermList merged(const TermList& o, bool negate) const {
    TermList r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    Order less;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
      if (less(a->first, b->first)) {
        r.terms_.push_back(*a++);
      } else if (less(b->first, a->first)) {
        r.terms_.emplace_back(b->first, negate ? -b->second : b->second);
        ++b;
      } else {
        R c = negate ? a->second - b->second : a->second + b->second;
        if (!c.is_zero()) r.terms_.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    for (; a != terms_.end(); ++a) r.terms_.push_back(*a);
    for (; b != o.terms_.end(); ++b)
      r.terms_.emplace_back(b->first, negate ? -b->second : b->second);
    return r;
  }

  std::vector<Term> terms_;
};

}  // namespace firstint
