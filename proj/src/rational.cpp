#include "projrig/rational.hpp"

#include <cctype>

namespace projrig {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den) || den == "0") {
      throw ParseError("invalid rational denominator in '" + std::string(text) + "'");
    }
  }
  std::string_view digits = num;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) {
    throw ParseError("invalid rational '" + std::string(text) + "'");
  }
  Rational value(std::string(num), 10);
  if (!den.empty()) {
    value /= Rational(std::string(den), 10);
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rational& value) {
  return value.get_str();
}

double rational_to_double(const Rational& value) {
  return value.get_d();
}

bool is_integer(const Rational& value) {
  return value.get_den() == 1;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3{a[1] * b[2] - a[2] * b[1],
              a[2] * b[0] - a[0] * b[2],
              a[0] * b[1] - a[1] * b[0]};
}

Rational dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

bool is_zero(const Vec3& v) {
  return v[0] == 0 && v[1] == 0 && v[2] == 0;
}

}  // namespace projrig
