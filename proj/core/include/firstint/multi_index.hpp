#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "firstint/errors.hpp"

namespace firstint {

/// Exponent vector of a monomial. Entry k is the exponent of the (k+1)-th
/// variable, so index 0 is y1 (or t1 in the parameter ring). Vectors are
/// read as if padded with trailing zeros, so values of different stored
/// length compare and combine consistently (scalars constructed without an
/// arity context are simply constants).
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t nvars) : e_(nvars, 0) {}
  MultiIndex(std::initializer_list<std::uint32_t> e) : e_(e) {}
  explicit MultiIndex(std::vector<std::uint32_t> e) : e_(std::move(e)) {}

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t operator[](std::size_t k) const { return k < e_.size() ? e_[k] : 0; }
  std::uint32_t& operator[](std::size_t k) {
    if (k >= e_.size()) e_.resize(k + 1, 0);
    return e_[k];
  }

  int degree() const {
    return static_cast<int>(std::accumulate(e_.begin(), e_.end(), std::uint64_t{0}));
  }

  /// Total degree ignoring the first variable: |m~| for m = (m1, m~).
  int tail_degree() const {
    std::uint64_t s = 0;
    for (std::size_t k = 1; k < e_.size(); ++k) s += e_[k];
    return static_cast<int>(s);
  }

  /// True when the monomial involves only the first variable (including the
  /// constant monomial).
  bool is_pure_first() const { return tail_degree() == 0; }

  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r(std::max(e_.size(), o.e_.size()));
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = (*this)[k] + o[k];
    return r;
  }

  /// Decrement one exponent (for formal derivatives). Caller guarantees
  /// (*this)[k] > 0.
  MultiIndex decremented(std::size_t k) const {
    MultiIndex r(*this);
    --r.e_[k];
    return r;
  }

  MultiIndex incremented(std::size_t k) const {
    MultiIndex r(*this);
    ++r[k];
    return r;
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t k = 0; k < std::max(a.e_.size(), b.e_.size()); ++k)
      if (a[k] != b[k]) return false;
    return true;
  }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }

  /// Stored exponents re-padded to exactly `n` entries (for serialization).
  std::vector<std::uint32_t> padded(std::size_t n) const {
    std::vector<std::uint32_t> out(n, 0);
    for (std::size_t k = 0; k < std::min(n, e_.size()); ++k) out[k] = e_[k];
    return out;
  }

  const std::vector<std::uint32_t>& exponents() const { return e_; }

private:
  std::vector<std::uint32_t> e_;
};

/// Graded-lexicographic order on full exponent vectors (used for the
/// parameter variables t1..tm): first by total degree, ties by lex with t1
/// the most significant variable.
struct GrlexOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t k = 0; k < std::max(a.nvars(), b.nvars()); ++k)
      if (a[k] != b[k]) return a[k] < b[k];
    return false;
  }
};

/// The global monomial order on the phase-space variables y1..yn:
/// graded-lexicographic with priority y2 > y3 > ... > yn > y1. y1 is ranked
/// last among the variables, so the kernel monomial y1^d is the first entry
/// of every degree-d block in canonical (ascending) term order.
struct PhaseOrder {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t k = 1; k < std::max(a.nvars(), b.nvars()); ++k)
      if (a[k] != b[k]) return a[k] < b[k];
    return false;  // equal degrees and equal tails force equal y1 exponents
  }
};

}  // namespace firstint
