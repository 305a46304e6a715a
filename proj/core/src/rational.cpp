#include "firstint/rational.hpp"

#include <cctype>
#include <ostream>

namespace firstint {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text, std::size_t offset_base) {
  std::size_t i = 0, n = text.size();
  while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = n;
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  std::string_view body = text.substr(i, j - i);
  if (body.empty()) throw ParseError("empty rational literal", offset_base + i);

  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
    ++i;
  }
  if (body.empty()) throw ParseError("sign without digits", offset_base + i);

  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational 'p/q'", offset_base + i);
    value = mpq_class(mpz_class(std::string(num)), mpz_class(std::string(den)));
    if (sgn(value.get_den()) == 0)
      throw ParseError("zero denominator", offset_base + i + slash + 1);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp))
      throw ParseError("malformed decimal literal", offset_base + i);
    mpz_class scale = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    mpz_class whole = ip.empty() ? mpz_class(0) : mpz_class(std::string(ip));
    value = mpq_class(whole * scale + mpz_class(std::string(fp)), scale);
    value.canonicalize();
  } else {
    if (!all_digits(body)) throw ParseError("malformed integer literal", offset_base + i);
    value = mpq_class(mpz_class(std::string(body)));
  }
  if (negative) value = -value;
  return Rational(std::move(value));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace firstint
