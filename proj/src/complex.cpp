#include "complex.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "errors.hpp"

namespace isolens {

namespace {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw InvalidParam("malformed complex literal '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  if (std::signbit(z.imag())) {
    out += '-';
    out += format_real(-z.imag());
  } else {
    out += '+';
    out += format_real(z.imag());
  }
  out += 'i';
  return out;
}

Complex parse_complex(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidParam("empty complex literal");

  if (text.back() != 'i') return {parse_real(text, whole), 0.0};

  text.remove_suffix(1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = text.size(); i-- > 1;) {
    const char c = text[i];
    if ((c == '+' || c == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, whole);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(text)};
  return {parse_real(text.substr(0, split), whole), imag_part(text.substr(split))};
}

}  // namespace isolens
