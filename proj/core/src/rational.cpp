#include "blforms/rational.hpp"

#include <cctype>
#include <cmath>

namespace blf {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// Decimal-only integer parse; avoids boost's octal reading of leading zeros
// and its rejection of '+'.
BigInt to_bigint(std::string_view s) {
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  while (i + 1 < s.size() && s[i] == '0') ++i;
  BigInt v{std::string(s.substr(i))};
  return negative ? BigInt(-v) : v;
}

// "0.7" -> "7/10"; only called on syntactically valid finite decimals.
std::string decimal_as_fraction(std::string_view s) {
  std::string sign;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sign = "-";
    i = 1;
  }
  auto dot = s.find('.');
  std::string digits = std::string(s.substr(i, dot - i)) + std::string(s.substr(dot + 1));
  std::size_t frac_len = s.size() - dot - 1;
  BigInt num = to_bigint(digits.empty() ? "0" : digits);
  BigInt den = 1;
  for (std::size_t j = 0; j < frac_len; ++j) den *= 10;
  Rational q(num, den);
  std::string out = sign + rational_to_string(q);
  return out;
}

bool looks_like_decimal(std::string_view s) {
  if (s.find('.') == std::string_view::npos) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) return false;
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
    } else {
      return false;
    }
  }
  return seen_digit;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw InputError("empty rational literal");
  if (looks_like_decimal(text)) {
    throw InputError("decimal notation '" + std::string(text) +
                     "' is not accepted for exponents; use " +
                     decimal_as_fraction(text));
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_token(text))
      throw InputError("malformed rational '" + std::string(text) + "'");
    return Rational(to_bigint(text));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw InputError("malformed rational '" + std::string(text) + "'");
  BigInt d = to_bigint(den);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(to_bigint(num), d);
}

std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value cannot be a rational");
  return Rational(x);  // boost converts the dyadic mantissa exactly
}

double to_double(const Rational& q) { return q.template convert_to<double>(); }

Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational rational_sum(const std::vector<Rational>& xs) {
  Rational s = 0;
  for (const auto& x : xs) s += x;
  return s;
}

}  // namespace blf
