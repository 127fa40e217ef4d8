#pragma once

#include <map>
#include <string>
#include <vector>

#include "projrig/configuration.hpp"
#include "projrig/exact_matrix.hpp"

namespace projrig {

class ChartValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Entities whose velocities are constrained to zero via two unit rows each.
struct PinningSystem {
  std::vector<std::string> points;
  std::vector<std::string> lines;

  bool empty() const { return points.empty() && lines.empty(); }
  void validate_against(const IncidenceStructure& structure) const;
};

// Column order: two columns per point in declaration order, then two per
// line in declaration order.
struct ColumnLayout {
  std::vector<std::string> pointIds;
  std::vector<std::string> lineIds;

  std::size_t cols() const { return 2 * (pointIds.size() + lineIds.size()); }
  std::size_t point_col(const std::string& id) const;
  std::size_t line_col(const std::string& id) const;
};

struct RowLabel {
  enum class Kind { Incidence, PinPoint, PinLine };
  Kind kind = Kind::Incidence;
  std::string pointId;  // incidence and point-pin rows
  std::string lineId;   // incidence and line-pin rows
  int component = 0;    // 0/1 for the two rows of a pin

  std::string describe() const;
};

struct RigidityMatrix {
  ExactMatrix entries;
  ColumnLayout layout;
  std::vector<RowLabel> rowLabels;
  std::size_t incidenceRows = 0;  // leading rows; pin rows follow
};

// One velocity assignment: chart-coordinate derivatives per entity.
struct FlexVector {
  std::map<std::string, std::pair<Rational, Rational>> pointVelocity;
  std::map<std::string, std::pair<Rational, Rational>> lineVelocity;
};

struct FlexBasis {
  std::vector<FlexVector> vectors;
  ColumnLayout layout;
};

// One scalar per declared incidence, keyed by (point id, line id).
struct StressVector {
  std::map<std::pair<std::string, std::string>, Rational> coefficient;

  Rational at(const std::string& pointId, const std::string& lineId) const;
};

std::vector<Rational> to_column_vector(const FlexVector& flex, const ColumnLayout& layout);
FlexVector from_column_vector(const std::vector<Rational>& column, const ColumnLayout& layout);

// Builds the incidence rows (one per declared incidence, in declaration
// order) followed by two unit pin rows per pinned entity (pinned points in
// declaration order, then pinned lines). Requires a chart-valid
// configuration; the row for incidence (p, l) with chart coordinates
// (x, y) and (a, b) places x, y in the columns of l and a, b in the columns
// of p.
RigidityMatrix assemble(const Configuration& config, const PinningSystem& pins = {});

// The eight exact infinitesimal motions of the projective group acting on a
// chart-valid configuration, in the fixed order: x-dilation, y-dilation,
// y-shear of points, x-shear of points, x-translation, y-translation, and
// the two rotations at infinity.
FlexBasis trivial_motion_basis(const Configuration& config);

struct RankComputation {
  std::size_t rank = 0;
  std::size_t nullity = 0;
  FlexBasis kernel;
  std::vector<std::vector<Rational>> cokernel;  // row-space annihilators, canonical
};

RankComputation exact_rank_kernel_cokernel(const RigidityMatrix& matrix);

// Cokernel of the unpinned matrix, converted to per-incidence coefficients.
std::vector<StressVector> self_stress_basis(const Configuration& config);

struct NumericRank {
  std::size_t rank = 0;
  std::vector<double> singularValues;
  double threshold = 0.0;
};

// Floating-point cross-check via singular values; the threshold defaults to
// max(rows, cols) * machine epsilon * largest singular value.
NumericRank numeric_rank(const RigidityMatrix& matrix, double absoluteThreshold = -1.0);

// Dimension of the span of the eight trivial motions (8 when the
// configuration contains four points in general position).
std::size_t trivial_span_dimension(const Configuration& config);

// Without pins: nullity equals 8 and the trivial motions span it. With
// pins: the pinned matrix has nullity 0.
bool is_infinitesimally_rigid(const Configuration& config, const PinningSystem& pins = {});

}  // namespace projrig
