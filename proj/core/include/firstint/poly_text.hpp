#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "firstint/graded_series.hpp"
#include "firstint/ring.hpp"

namespace firstint {

/// Canonical textual form of polynomials and truncated series.
///
/// Terms are emitted in the global monomial order (degree ascending, then
/// PhaseOrder), as `coeff * y1^a1 y2^a2 ...`. A unit coefficient is omitted,
/// `^1` is omitted, and coefficients whose own rendering contains structure
/// (non-real Gaussian values, parameter polynomials) are parenthesized. The
/// same grammar is accepted back by `parse_series_text`.

namespace poly_text_detail {

inline std::string monomial_text(const MultiIndex& m) {
  std::string out;
  for (std::size_t k = 0; k < m.nvars(); ++k) {
    if (m[k] == 0) continue;
    if (!out.empty()) out += " ";
    out += "y" + std::to_string(k + 1);
    if (m[k] > 1) out += "^" + std::to_string(m[k]);
  }
  return out;
}

template <typename R>
std::string term_text(const MultiIndex& m, const R& c) {
  std::string cs = RingOps<R>::str(c);
  if (RingOps<R>::coeff_needs_parens(c)) cs = "(" + cs + ")";
  std::string ms = monomial_text(m);
  if (ms.empty()) return cs;
  if (c.is_one()) return ms;
  if ((-c).is_one()) return "-" + ms;
  return cs + " * " + ms;
}

template <typename R, typename Terms>
void append_terms(std::string& out, const Terms& terms) {
  for (const auto& [m, c] : terms) {
    std::string t = term_text(m, c);
    if (out.empty()) {
      out = std::move(t);
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
}

}  // namespace poly_text_detail

template <typename R>
std::string to_text(const HomoPoly<R>& p) {
  std::string out;
  poly_text_detail::append_terms<R>(out, p.terms());
  return out.empty() ? "0" : out;
}

template <typename R>
std::string to_text(const GradedSeries<R>& s) {
  std::string out;
  for (const auto& [d, h] : s.components()) poly_text_detail::append_terms<R>(out, h.terms());
  return out.empty() ? "0" : out;
}

/// Parses the canonical grammar above into a series over `R` with `nvars`
/// phase variables, truncated at `trunc`. Terms of degree above `trunc` are
/// rejected (the caller decides how generous the truncation is).
template <typename R>
GradedSeries<R> parse_series_text(std::string_view text, std::size_t nvars,
                                  std::size_t nparams, int trunc,
                                  std::size_t offset_base = 0) {
  GradedSeries<R> out(nvars, trunc);
  std::size_t i = 0;
  auto ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  ws();
  if (i == text.size()) throw ParseError("empty polynomial literal", offset_base);
  if (text.substr(i) == "0") return out;

  bool first = true;
  while (i < text.size()) {
    ws();
    int sign = 1;
    if (!first) {
      if (i < text.size() && text[i] == '+') {
        ++i;
      } else if (i < text.size() && text[i] == '-') {
        sign = -1;
        ++i;
      } else {
        throw ParseError("expected '+' or '-' between terms", offset_base + i);
      }
      ws();
    } else if (i < text.size() && text[i] == '-') {
      sign = -1;
      ++i;
      ws();
    }
    first = false;

    auto at_variable = [&](std::size_t p) {
      return p + 1 < text.size() && text[p] == 'y' &&
             std::isdigit(static_cast<unsigned char>(text[p + 1]));
    };

    R coeff = R(1);
    bool have_coeff = false;
    if (i < text.size() && text[i] == '(') {
      int depth = 0;
      std::size_t j = i;
      for (; j < text.size(); ++j) {
        if (text[j] == '(') ++depth;
        if (text[j] == ')' && --depth == 0) break;
      }
      if (depth != 0) throw ParseError("unbalanced '(' in coefficient", offset_base + i);
      std::size_t after = j + 1;
      if constexpr (RingOps<R>::parametric) {
        // "(p/q) t1^b1 ..." -- the parenthesized rational plus its t-powers
        // form one parametric monomial; extend the slice through them.
        std::size_t k = after;
        for (;;) {
          std::size_t probe = k;
          while (probe < text.size() &&
                 std::isspace(static_cast<unsigned char>(text[probe])))
            ++probe;
          if (probe + 1 < text.size() && text[probe] == 't' &&
              std::isdigit(static_cast<unsigned char>(text[probe + 1]))) {
            probe += 2;
            while (probe < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[probe])) ||
                    text[probe] == '^'))
              ++probe;
            k = probe;
          } else {
            break;
          }
        }
        if (k > after) {
          coeff = RingOps<R>::parse(text.substr(i, k - i), nparams, offset_base + i);
          i = k;
          have_coeff = true;
        }
      }
      if (!have_coeff) {
        coeff =
            RingOps<R>::parse(text.substr(i + 1, j - i - 1), nparams, offset_base + i + 1);
        i = after;
        have_coeff = true;
      }
    } else if (!at_variable(i)) {
      std::size_t j = i;
      while (j < text.size() && text[j] != '*' && text[j] != '+' && text[j] != '-' &&
             !at_variable(j))
        ++j;
      std::size_t stop = j;
      while (stop > i && std::isspace(static_cast<unsigned char>(text[stop - 1]))) --stop;
      if (stop == i) throw ParseError("expected a coefficient or monomial", offset_base + i);
      coeff = RingOps<R>::parse(text.substr(i, stop - i), nparams, offset_base + i);
      i = j;
      have_coeff = true;
    }
    ws();
    if (i < text.size() && text[i] == '*') {
      ++i;
      ws();
    }

    MultiIndex m(nvars);
    while (at_variable(i)) {
      ++i;  // 'y'
      std::size_t k = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        k = k * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (k < 1 || k > nvars)
        throw ParseError("variable y" + std::to_string(k) + " out of range", offset_base + i);
      std::uint32_t e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::uint64_t v = 0;
        std::size_t digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
          ++digits;
        }
        if (digits == 0) throw ParseError("missing exponent after '^'", offset_base + i);
        e = static_cast<std::uint32_t>(v);
      }
      m[k - 1] += e;
      ws();
    }
    if (m.degree() == 0 && !have_coeff)
      throw ParseError("term with neither coefficient nor variables", offset_base + i);
    if (m.degree() > trunc)
      throw ParseError("term degree exceeds the truncation", offset_base + i);
    out.accumulate(m, sign < 0 ? -coeff : coeff);
  }
  return out;
}

}  // namespace firstint
