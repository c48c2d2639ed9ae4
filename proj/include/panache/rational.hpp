#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "panache/errors.hpp"

namespace panache {

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading sign on p, no whitespace, q > 0).
inline Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// p / q in lowest terms. mpq_class(p, q) alone skips the reduction.
inline Rational make_rational(long p, long q) {
  if (q == 0) throw ParseError("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace panache
