#include "maxplus/numeric.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

// Reads a decimal literal [sign] digits [. digits] [(e|E) [sign] digits]
// into an exact rational.
Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits.push_back(text[pos++]);
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits.push_back(text[pos++]);
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw InputError("not a number: '" + std::string(text) + "'");
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    long exponent = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last) {
      throw InputError("bad exponent in '" + std::string(text) + "'");
    }
    if (exponent > 4096 || exponent < -4096) {
      throw InputError("exponent out of range in '" + std::string(text) + "'");
    }
    scale += exponent;
    pos = text.size();
  }
  if (pos != text.size()) throw InputError("not a number: '" + std::string(text) + "'");

  mpz_class numerator(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational result;
  if (scale >= 0) {
    result = Rational(numerator * ten_pow);
  } else {
    result = Rational(numerator, ten_pow);
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (num.get_den() != 1 || den.get_den() != 1) {
    throw InputError("fraction parts must be integers: '" + std::string(text) + "'");
  }
  if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
  Rational out = num / den;
  out.canonicalize();
  return out;
}

}  // namespace

template <>
Rational from_int<Rational>(long value) {
  return Rational(value);
}

template <>
double from_int<double>(long value) {
  return static_cast<double>(value);
}

template <>
Rational parse_number<Rational>(std::string_view text) {
  return parse_rational(text);
}

template <>
double parse_number<double>(std::string_view text) {
  const Rational exact = parse_rational(text);  // validates the syntax
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    // correctly rounded, unlike mpq_get_d which truncates
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec == std::errc{} && ptr == body.data() + body.size()) return value;
    return exact.get_d();
  }
  return exact.get_num().get_d() / exact.get_den().get_d();
}

template <>
Rational from_double<Rational>(double value) {
  if (!std::isfinite(value)) throw InputError("non-finite value cannot be represented");
  return Rational(value);
}

template <>
double from_double<double>(double value) {
  return value;
}

template <>
std::string to_string<Rational>(const Rational& value) {
  return value.get_str();
}

template <>
std::string to_string<double>(const double& value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace maxplus
