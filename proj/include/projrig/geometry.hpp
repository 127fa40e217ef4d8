#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "projrig/rational.hpp"

namespace projrig {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntityKind { Point, Line };

std::string to_string(EntityKind kind);

// A projective point (x:y:z) or line (a:b:c), never all zero. Stored in the
// canonical representative: coprime integer coordinates whose first nonzero
// entry is positive, so projectively equal triples compare bitwise equal.
struct HomogeneousTriple {
  Vec3 coords{Rational(0), Rational(0), Rational(0)};
  EntityKind kind = EntityKind::Point;

  HomogeneousTriple() = default;
  HomogeneousTriple(Rational x, Rational y, Rational z, EntityKind k);

  const Rational& x() const { return coords[0]; }
  const Rational& y() const { return coords[1]; }
  const Rational& z() const { return coords[2]; }

  // True for points with z != 0 (finite) and lines with c != 0 (not through
  // the affine origin); the chart in which the rigidity matrix is defined.
  bool chart_valid() const { return coords[2] != 0; }

  // Chart coordinates (x/z, y/z) for points, (a/c, b/c) for lines.
  std::pair<Rational, Rational> affine() const;

  bool operator==(const HomogeneousTriple& other) const = default;
};

HomogeneousTriple point(Rational x, Rational y, Rational z = Rational(1));
HomogeneousTriple line(Rational a, Rational b, Rational c);

// Reduces an arbitrary nonzero rational triple to the canonical
// representative described above.
Vec3 canonical_representative(const Vec3& raw);

std::string to_string(const HomogeneousTriple& t);

// Exact incidence predicate: the homogeneous dot product vanishes.
// Requires one point and one line, in either argument order.
bool incident(const HomogeneousTriple& a, const HomogeneousTriple& b);

// Line through two distinct points.
HomogeneousTriple join(const HomogeneousTriple& p, const HomogeneousTriple& q);

// Point common to two distinct lines.
HomogeneousTriple meet(const HomogeneousTriple& l, const HomogeneousTriple& m);

// 3x3 rational matrix acting on homogeneous coordinates: points by p -> Ap,
// lines by l -> A^{-T} l, which preserves incidence exactly.
struct Mat3 {
  std::array<Vec3, 3> rows;

  static Mat3 identity();
  Rational det() const;
  bool invertible() const { return det() != 0; }
  Mat3 transposed() const;
  // Adjugate transpose; A^{-T} up to the nonzero scalar det(A), which is
  // invisible projectively.
  Mat3 inverse_transpose() const;
  Vec3 apply(const Vec3& v) const;
  bool is_scalar_multiple_of_identity() const;
};

HomogeneousTriple apply_transform(const Mat3& transform, const HomogeneousTriple& entity);

}  // namespace projrig
