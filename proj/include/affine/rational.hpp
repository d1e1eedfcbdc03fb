#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace affine {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" (decimal integers, q > 0) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers keep the "/1" suffix so output is bit-exact.
std::string to_pq(const Rational& value);

/// Short form used in formula text: "p" for integers, "p/q" otherwise.
std::string to_short(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

std::vector<Rational> parse_rational_list(std::string_view csv);

}  // namespace affine
