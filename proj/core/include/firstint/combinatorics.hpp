#pragma once

#include <cstdint>
#include <functional>

#include "firstint/multi_index.hpp"

namespace firstint {

/// Visits every exponent vector of total degree `degree` in `nvars`
/// variables, in deterministic (last-variable-fastest) order.
template <typename Fn>
void for_each_multi_index(std::size_t nvars, int degree, Fn&& fn) {
  MultiIndex m(nvars);
  // Iterative composition enumeration: place `degree` units into slots.
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int rest) {
    if (k + 1 == nvars) {
      m[k] = static_cast<std::uint32_t>(rest);
      fn(static_cast<const MultiIndex&>(m));
      return;
    }
    for (int e = rest; e >= 0; --e) {
      m[k] = static_cast<std::uint32_t>(e);
      rec(k + 1, rest - e);
    }
  };
  if (nvars == 0) {
    if (degree == 0) fn(static_cast<const MultiIndex&>(m));
    return;
  }
  rec(0, degree);
}

/// Number of monomials of total degree `degree` in `nvars` variables:
/// C(degree + nvars - 1, nvars - 1).
inline std::uint64_t monomial_count(std::size_t nvars, int degree) {
  if (nvars == 0) return degree == 0 ? 1 : 0;
  std::uint64_t num = 1, den = 1;
  for (std::size_t k = 1; k < nvars; ++k) {
    num *= static_cast<std::uint64_t>(degree) + k;
    den *= k;
  }
  return num / den;
}

}  // namespace firstint
