#include "firstint/gaussian_rational.hpp"

#include <cctype>

namespace firstint {

GaussianRational GaussianRational::parse(std::string_view text, std::size_t offset_base) {
  std::size_t i = 0, n = text.size();
  while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = n;
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(i, end - i);
  if (body.empty()) throw ParseError("empty Gaussian rational literal", offset_base + i);

  // Split at the first +/- after the leading sign; the rest, if present,
  // must be "<rat> i".
  std::size_t split = std::string_view::npos;
  for (std::size_t k = 1; k < body.size(); ++k) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    if (!body.empty() && body.back() == 'i')
      throw ParseError("imaginary part without a real part; write '0+r/s i'", offset_base + i);
    return GaussianRational(Rational::parse(body, offset_base + i));
  }

  Rational re = Rational::parse(body.substr(0, split), offset_base + i);
  std::string_view rest = body.substr(split);
  if (rest.empty() || rest.back() != 'i')
    throw ParseError("expected trailing 'i' on the imaginary part", offset_base + i + split);
  rest.remove_suffix(1);
  Rational im = Rational::parse(rest, offset_base + i + split);
  return {std::move(re), std::move(im)};
}

}  // namespace firstint
