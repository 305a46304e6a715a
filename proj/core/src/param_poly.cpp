#include "firstint/param_poly.hpp"

#include <cctype>

namespace firstint {

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// "t<k>[^<e>]", 1-based k.
bool parse_tpower(std::string_view s, std::size_t& i, std::size_t nparams, std::size_t base,
                  std::size_t& k_out, std::uint32_t& e_out) {
  std::size_t save = i;
  if (i >= s.size() || s[i] != 't') return false;
  ++i;
  std::size_t k = 0, digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    k = k * 10 + static_cast<std::size_t>(s[i] - '0');
    ++i;
    ++digits;
  }
  if (digits == 0) {
    i = save;
    return false;
  }
  if (k < 1 || k > nparams)
    throw ParseError("parameter index t" + std::to_string(k) + " out of range", base + save);
  std::uint32_t e = 1;
  if (i < s.size() && s[i] == '^') {
    ++i;
    std::uint64_t v = 0;
    std::size_t ed = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
      ++i;
      ++ed;
    }
    if (ed == 0) throw ParseError("missing exponent after '^'", base + i);
    e = static_cast<std::uint32_t>(v);
  }
  k_out = k;
  e_out = e;
  return true;
}

}  // namespace

ParamPoly ParamPoly::parse(std::string_view text, std::size_t nparams,
                           std::size_t offset_base) {
  ParamPoly acc(Rational(0), nparams);
  std::size_t i = 0;
  skip_ws(text, i);
  if (i == text.size()) throw ParseError("empty parametric literal", offset_base);
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip_ws(text, i);
    if (!first) {
      if (text[i] == '+') {
        ++i;
      } else if (text[i] == '-') {
        sign = -1;
        ++i;
      } else {
        throw ParseError("expected '+' or '-' between parametric terms", offset_base + i);
      }
      skip_ws(text, i);
    } else if (i < text.size() && text[i] == '-') {
      sign = -1;
      ++i;
      skip_ws(text, i);
    }
    first = false;

    Rational coeff(1);
    bool have_coeff = false;
    if (i < text.size() && text[i] == '(') {
      std::size_t close = text.find(')', i);
      if (close == std::string_view::npos)
        throw ParseError("unterminated '(' in parametric coefficient", offset_base + i);
      coeff = Rational::parse(text.substr(i + 1, close - i - 1), offset_base + i + 1);
      i = close + 1;
      have_coeff = true;
    } else if (i < text.size() && text[i] != 't') {
      // Bare rational constant term.
      std::size_t start = i;
      while (i < text.size() && text[i] != '+' && text[i] != '-') ++i;
      // Back up over trailing spaces so positions stay tight.
      std::size_t stop = i;
      while (stop > start && std::isspace(static_cast<unsigned char>(text[stop - 1]))) --stop;
      coeff = Rational::parse(text.substr(start, stop - start), offset_base + start);
      have_coeff = true;
      if (sign < 0) coeff = -coeff;
      acc += ParamPoly(coeff, nparams);
      continue;
    }

    MultiIndex m(nparams);
    bool any_var = false;
    while (true) {
      skip_ws(text, i);
      std::size_t k;
      std::uint32_t e;
      if (!parse_tpower(text, i, nparams, offset_base, k, e)) break;
      m[k - 1] += e;
      any_var = true;
    }
    if (!any_var && have_coeff)
      throw ParseError("parenthesized coefficient must be followed by t factors",
                       offset_base + i);
    if (!any_var) throw ParseError("expected a parametric term", offset_base + i);
    if (sign < 0) coeff = -coeff;
    acc += ParamPoly::monomial(std::move(m), std::move(coeff));
  }
  return acc;
}

std::string ParamPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    if (m.degree() == 0) {
      out += c.str();
      continue;
    }
    out += "(" + c.str() + ")";
    for (std::size_t k = 0; k < m.nvars(); ++k) {
      if (m[k] == 0) continue;
      out += " t" + std::to_string(k + 1);
      if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
  }
  return out;
}

}  // namespace firstint
