#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdlib>
#include <string>

#include "liecurv/error.hpp"

namespace liecurv {

/// Arbitrary-precision rational number. All structural computations in the
/// library (root systems, structure constants, block decompositions) are done
/// in this type so that every equality test is exact.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Parses "3", "-7/11", "0.25", "1.3842". Fraction and decimal forms only;
/// exponents are rejected so that inputs stay exactly representable.
inline Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty rational literal");

  auto fail = [&]() -> Rational {
    throw InputError("malformed rational literal: '" + text + "'");
  };

  std::string sign;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sign = "-";
    pos = 1;
  }
  std::string digits = s.substr(pos);
  if (digits.empty()) return fail();

  auto all_digits = [](const std::string& d) {
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  std::size_t slash = digits.find('/');
  if (slash != std::string::npos) {
    std::string num = digits.substr(0, slash);
    std::string den = digits.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    Rational q(sign + num + "/" + den, 10);
    if (q.get_den() == 0) throw InputError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
  }

  std::size_t dot = digits.find('.');
  if (dot != std::string::npos) {
    std::string intpart = digits.substr(0, dot);
    std::string fracpart = digits.substr(dot + 1);
    if (intpart.empty()) intpart = "0";
    if (fracpart.empty() || !all_digits(intpart) || !all_digits(fracpart))
      return fail();
    Rational q(sign + intpart + fracpart + "/1" + std::string(fracpart.size(), '0'),
               10);
    q.canonicalize();
    return q;
  }

  if (!all_digits(digits)) return fail();
  Rational q(sign + digits, 10);
  q.canonicalize();
  return q;
}

/// "p/q" for non-integers, plain "p" otherwise.
inline std::string to_fraction_string(const Rational& q) {
  return q.get_str();
}

}  // namespace liecurv
