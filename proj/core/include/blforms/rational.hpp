#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an input value or document is malformed.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation's stated precondition does not hold for the
/// given (otherwise well-formed) input. The message names the offending
/// condition tag and index with its exact slack.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "a/b", "-a/b" or a plain integer string. Decimal notation is
/// rejected; when the decimal is finite the error suggests the exact
/// fraction (e.g. "0.7" -> use 7/10) so strict-vs-equality distinctions
/// stay sound.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" rendering ("a" when the denominator is 1).
std::string rational_to_string(const Rational& q);

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

double to_double(const Rational& q);

Rational rational_abs(const Rational& q);

/// Sum of a vector of rationals, exact.
Rational rational_sum(const std::vector<Rational>& xs);

}  // namespace blf
