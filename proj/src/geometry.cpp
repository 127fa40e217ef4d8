#include "projrig/geometry.hpp"

#include <sstream>

namespace projrig {

std::string to_string(EntityKind kind) {
  return kind == EntityKind::Point ? "point" : "line";
}

Vec3 canonical_representative(const Vec3& raw) {
  if (is_zero(raw)) {
    throw GeometryError("zero triple has no canonical representative");
  }
  mpz_class scale = 1;
  for (const auto& c : raw) {
    mpz_class den = c.get_den();
    scale = scale / gcd(scale, den) * den;
  }
  mpz_class content = 0;
  std::array<mpz_class, 3> nums;
  for (int i = 0; i < 3; ++i) {
    mpq_class scaled = raw[i] * Rational(scale);
    nums[i] = scaled.get_num();
    content = gcd(content, nums[i]);
  }
  int lead = 0;
  while (nums[lead] == 0) ++lead;
  if (nums[lead] < 0) content = -content;
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    mpz_class reduced = nums[i] / content;
    out[i] = Rational(reduced);
  }
  return out;
}

HomogeneousTriple::HomogeneousTriple(Rational x, Rational y, Rational z, EntityKind k)
    : coords(canonical_representative(Vec3{std::move(x), std::move(y), std::move(z)})),
      kind(k) {}

std::pair<Rational, Rational> HomogeneousTriple::affine() const {
  if (!chart_valid()) {
    throw GeometryError("no chart coordinates: " + to_string(*this));
  }
  return {Rational(coords[0] / coords[2]), Rational(coords[1] / coords[2])};
}

HomogeneousTriple point(Rational x, Rational y, Rational z) {
  return HomogeneousTriple(std::move(x), std::move(y), std::move(z), EntityKind::Point);
}

HomogeneousTriple line(Rational a, Rational b, Rational c) {
  return HomogeneousTriple(std::move(a), std::move(b), std::move(c), EntityKind::Line);
}

std::string to_string(const HomogeneousTriple& t) {
  std::ostringstream out;
  out << to_string(t.kind) << " (" << rational_to_string(t.coords[0]) << ":"
      << rational_to_string(t.coords[1]) << ":" << rational_to_string(t.coords[2]) << ")";
  return out.str();
}

bool incident(const HomogeneousTriple& a, const HomogeneousTriple& b) {
  if (a.kind == b.kind) {
    throw GeometryError("incidence is between a point and a line, got two " +
                        to_string(a.kind) + "s");
  }
  return dot(a.coords, b.coords) == 0;
}

HomogeneousTriple join(const HomogeneousTriple& p, const HomogeneousTriple& q) {
  if (p.kind != EntityKind::Point || q.kind != EntityKind::Point) {
    throw GeometryError("join expects two points");
  }
  Vec3 c = cross(p.coords, q.coords);
  if (is_zero(c)) {
    throw GeometryError("join of equal points " + to_string(p));
  }
  return HomogeneousTriple(c[0], c[1], c[2], EntityKind::Line);
}

HomogeneousTriple meet(const HomogeneousTriple& l, const HomogeneousTriple& m) {
  if (l.kind != EntityKind::Line || m.kind != EntityKind::Line) {
    throw GeometryError("meet expects two lines");
  }
  Vec3 c = cross(l.coords, m.coords);
  if (is_zero(c)) {
    throw GeometryError("meet of equal lines " + to_string(l));
  }
  return HomogeneousTriple(c[0], c[1], c[2], EntityKind::Point);
}

Mat3 Mat3::identity() {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    m.rows[i] = Vec3{Rational(i == 0 ? 1 : 0), Rational(i == 1 ? 1 : 0), Rational(i == 2 ? 1 : 0)};
  }
  return m;
}

Rational Mat3::det() const {
  return dot(rows[0], cross(rows[1], rows[2]));
}

Mat3 Mat3::transposed() const {
  Mat3 t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      t.rows[i][j] = rows[j][i];
    }
  }
  return t;
}

Mat3 Mat3::inverse_transpose() const {
  if (!invertible()) {
    throw GeometryError("transform is singular");
  }
  // Rows of the adjugate transpose are cross products of the original rows.
  Mat3 adj;
  adj.rows[0] = cross(rows[1], rows[2]);
  adj.rows[1] = cross(rows[2], rows[0]);
  adj.rows[2] = cross(rows[0], rows[1]);
  return adj;
}

Vec3 Mat3::apply(const Vec3& v) const {
  return Vec3{dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
}

bool Mat3::is_scalar_multiple_of_identity() const {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && rows[i][j] != 0) return false;
    }
  }
  return rows[0][0] == rows[1][1] && rows[1][1] == rows[2][2] && rows[0][0] != 0;
}

HomogeneousTriple apply_transform(const Mat3& transform, const HomogeneousTriple& entity) {
  if (!transform.invertible()) {
    throw GeometryError("transform is singular");
  }
  Vec3 image = entity.kind == EntityKind::Point
                   ? transform.apply(entity.coords)
                   : transform.inverse_transpose().apply(entity.coords);
  return HomogeneousTriple(image[0], image[1], image[2], entity.kind);
}

}  // namespace projrig
