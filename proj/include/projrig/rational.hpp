#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace projrig {

// Exact rational scalar. mpq_class keeps values in canonical reduced form
// (positive denominator, gcd 1) as long as inputs are canonical, which the
// parser below guarantees.
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "p", "-p" or "p/q". q must be a positive integer; whitespace,
// signs on q, and empty parts are rejected.
Rational rational_from_string(std::string_view text);

// Formats as "p", "-p" or "p/q" with q > 1 only when needed.
std::string rational_to_string(const Rational& value);

double rational_to_double(const Rational& value);

bool is_integer(const Rational& value);

// Exact 3-vectors over the rationals, used for homogeneous coordinates.
using Vec3 = std::array<Rational, 3>;

Vec3 cross(const Vec3& a, const Vec3& b);
Rational dot(const Vec3& a, const Vec3& b);
bool is_zero(const Vec3& v);

}  // namespace projrig
