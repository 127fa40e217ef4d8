#include "projrig/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace projrig {

void PinningSystem::validate_against(const IncidenceStructure& structure) const {
  for (const auto& id : points) {
    if (!structure.has_point(id)) {
      throw ValidationError("pin references undeclared point '" + id + "'");
    }
  }
  for (const auto& id : lines) {
    if (!structure.has_line(id)) {
      throw ValidationError("pin references undeclared line '" + id + "'");
    }
  }
  if (std::set<std::string>(points.begin(), points.end()).size() != points.size() ||
      std::set<std::string>(lines.begin(), lines.end()).size() != lines.size()) {
    throw ValidationError("duplicate pinned entity");
  }
}

std::size_t ColumnLayout::point_col(const std::string& id) const {
  auto it = std::find(pointIds.begin(), pointIds.end(), id);
  if (it == pointIds.end()) {
    throw ValidationError("layout has no point '" + id + "'");
  }
  return 2 * static_cast<std::size_t>(it - pointIds.begin());
}

std::size_t ColumnLayout::line_col(const std::string& id) const {
  auto it = std::find(lineIds.begin(), lineIds.end(), id);
  if (it == lineIds.end()) {
    throw ValidationError("layout has no line '" + id + "'");
  }
  return 2 * (pointIds.size() + static_cast<std::size_t>(it - lineIds.begin()));
}

std::string RowLabel::describe() const {
  switch (kind) {
    case Kind::Incidence:
      return "incidence(" + pointId + "," + lineId + ")";
    case Kind::PinPoint:
      return "pin(" + pointId + ")[" + (component == 0 ? "x" : "y") + "]";
    case Kind::PinLine:
      return "pin(" + lineId + ")[" + (component == 0 ? "a" : "b") + "]";
  }
  return {};
}

Rational StressVector::at(const std::string& pointId, const std::string& lineId) const {
  auto it = coefficient.find({pointId, lineId});
  return it == coefficient.end() ? Rational(0) : it->second;
}

std::vector<Rational> to_column_vector(const FlexVector& flex, const ColumnLayout& layout) {
  std::vector<Rational> column(layout.cols(), Rational(0));
  for (const auto& [id, v] : flex.pointVelocity) {
    std::size_t c = layout.point_col(id);
    column[c] = v.first;
    column[c + 1] = v.second;
  }
  for (const auto& [id, v] : flex.lineVelocity) {
    std::size_t c = layout.line_col(id);
    column[c] = v.first;
    column[c + 1] = v.second;
  }
  return column;
}

FlexVector from_column_vector(const std::vector<Rational>& column, const ColumnLayout& layout) {
  if (column.size() != layout.cols()) {
    throw std::invalid_argument("column vector length does not match layout");
  }
  FlexVector flex;
  for (const auto& id : layout.pointIds) {
    std::size_t c = layout.point_col(id);
    flex.pointVelocity[id] = {column[c], column[c + 1]};
  }
  for (const auto& id : layout.lineIds) {
    std::size_t c = layout.line_col(id);
    flex.lineVelocity[id] = {column[c], column[c + 1]};
  }
  return flex;
}

RigidityMatrix assemble(const Configuration& config, const PinningSystem& pins) {
  pins.validate_against(config.structure);
  if (auto blocker = config.chart_violation()) {
    throw ChartValidityError("configuration is not chart-valid: entity '" + *blocker +
                             "' (normalize to a chart first)");
  }
  RigidityMatrix m;
  m.layout.pointIds = config.structure.points;
  m.layout.lineIds = config.structure.lines;
  m.entries = ExactMatrix(config.structure.incidences.size() +
                              2 * (pins.points.size() + pins.lines.size()),
                          m.layout.cols());
  std::size_t r = 0;
  for (const auto& [p, l] : config.structure.incidences) {
    auto [x, y] = config.point_at(p).affine();
    auto [a, b] = config.line_at(l).affine();
    std::size_t pc = m.layout.point_col(p);
    std::size_t lc = m.layout.line_col(l);
    m.entries.at(r, lc) = x;
    m.entries.at(r, lc + 1) = y;
    m.entries.at(r, pc) = a;
    m.entries.at(r, pc + 1) = b;
    m.rowLabels.push_back({RowLabel::Kind::Incidence, p, l, 0});
    ++r;
  }
  m.incidenceRows = r;
  for (const auto& id : pins.points) {
    std::size_t pc = m.layout.point_col(id);
    for (int component = 0; component < 2; ++component) {
      m.entries.at(r, pc + component) = 1;
      m.rowLabels.push_back({RowLabel::Kind::PinPoint, id, "", component});
      ++r;
    }
  }
  for (const auto& id : pins.lines) {
    std::size_t lc = m.layout.line_col(id);
    for (int component = 0; component < 2; ++component) {
      m.entries.at(r, lc + component) = 1;
      m.rowLabels.push_back({RowLabel::Kind::PinLine, "", id, component});
      ++r;
    }
  }
  return m;
}

FlexBasis trivial_motion_basis(const Configuration& config) {
  if (auto blocker = config.chart_violation()) {
    throw ChartValidityError("configuration is not chart-valid: entity '" + *blocker + "'");
  }
  FlexBasis basis;
  basis.layout.pointIds = config.structure.points;
  basis.layout.lineIds = config.structure.lines;

  auto build = [&config](auto pointPart, auto linePart) {
    FlexVector v;
    for (const auto& id : config.structure.points) {
      auto [x, y] = config.point_at(id).affine();
      v.pointVelocity[id] = pointPart(x, y);
    }
    for (const auto& id : config.structure.lines) {
      auto [a, b] = config.line_at(id).affine();
      v.lineVelocity[id] = linePart(a, b);
    }
    return v;
  };
  using RP = std::pair<Rational, Rational>;

  // x-dilation
  basis.vectors.push_back(build([](const Rational& x, const Rational&) { return RP{x, 0}; },
                                [](const Rational& a, const Rational&) { return RP{-a, 0}; }));
  // y-dilation
  basis.vectors.push_back(build([](const Rational&, const Rational& y) { return RP{0, y}; },
                                [](const Rational&, const Rational& b) { return RP{0, -b}; }));
  // y-shear of points (lines shear in -x)
  basis.vectors.push_back(build([](const Rational& x, const Rational&) { return RP{0, x}; },
                                [](const Rational&, const Rational& b) { return RP{-b, 0}; }));
  // x-shear of points (lines shear in -y)
  basis.vectors.push_back(build([](const Rational&, const Rational& y) { return RP{y, 0}; },
                                [](const Rational& a, const Rational&) { return RP{0, -a}; }));
  // x-translation
  basis.vectors.push_back(
      build([](const Rational&, const Rational&) { return RP{1, 0}; },
            [](const Rational& a, const Rational& b) { return RP{a * a, a * b}; }));
  // y-translation
  basis.vectors.push_back(
      build([](const Rational&, const Rational&) { return RP{0, 1}; },
            [](const Rational& a, const Rational& b) { return RP{a * b, b * b}; }));
  // rotation at infinity, x-axis variant
  basis.vectors.push_back(
      build([](const Rational& x, const Rational& y) { return RP{-x * x, -x * y}; },
            [](const Rational&, const Rational&) { return RP{-1, 0}; }));
  // rotation at infinity, y-axis variant
  basis.vectors.push_back(
      build([](const Rational& x, const Rational& y) { return RP{-x * y, -y * y}; },
            [](const Rational&, const Rational&) { return RP{0, -1}; }));
  return basis;
}

RankComputation exact_rank_kernel_cokernel(const RigidityMatrix& matrix) {
  RankComputation out;
  out.kernel.layout = matrix.layout;
  auto kernelVectors = matrix.entries.kernel_basis();
  out.rank = matrix.entries.cols() - kernelVectors.size();
  out.nullity = kernelVectors.size();
  for (auto& v : kernelVectors) {
    out.kernel.vectors.push_back(from_column_vector(v, matrix.layout));
  }
  out.cokernel = matrix.entries.cokernel_basis();
  return out;
}

std::vector<StressVector> self_stress_basis(const Configuration& config) {
  RigidityMatrix m = assemble(config);
  std::vector<StressVector> basis;
  for (const auto& raw : m.entries.cokernel_basis()) {
    StressVector stress;
    for (std::size_t r = 0; r < m.incidenceRows; ++r) {
      stress.coefficient[{m.rowLabels[r].pointId, m.rowLabels[r].lineId}] = raw[r];
    }
    basis.push_back(std::move(stress));
  }
  return basis;
}

NumericRank numeric_rank(const RigidityMatrix& matrix, double absoluteThreshold) {
  const std::size_t rows = matrix.entries.rows();
  const std::size_t cols = matrix.entries.cols();
  NumericRank out;
  if (rows == 0 || cols == 0) {
    out.threshold = 0.0;
    return out;
  }
  Eigen::MatrixXd numeric(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double value = rational_to_double(matrix.entries.at(r, c));
      if (!std::isfinite(value)) {
        throw std::overflow_error("matrix entry overflows double precision");
      }
      numeric(r, c) = value;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(numeric);
  const auto& sigma = svd.singularValues();
  out.singularValues.assign(sigma.data(), sigma.data() + sigma.size());
  double largest = out.singularValues.empty() ? 0.0 : out.singularValues.front();
  out.threshold = absoluteThreshold >= 0.0
                      ? absoluteThreshold
                      : static_cast<double>(std::max(rows, cols)) *
                            std::numeric_limits<double>::epsilon() * largest;
  for (double s : out.singularValues) {
    if (s > out.threshold) ++out.rank;
  }
  return out;
}

std::size_t trivial_span_dimension(const Configuration& config) {
  FlexBasis basis = trivial_motion_basis(config);
  ExactMatrix stacked(0, basis.layout.cols());
  for (const auto& v : basis.vectors) {
    stacked.append_row(to_column_vector(v, basis.layout));
  }
  return stacked.rank();
}

bool is_infinitesimally_rigid(const Configuration& config, const PinningSystem& pins) {
  RigidityMatrix m = assemble(config, pins);
  std::size_t nullity = m.entries.cols() - m.entries.rank();
  if (pins.empty()) {
    return nullity == 8 && trivial_span_dimension(config) == 8;
  }
  return nullity == 0;
}

}  // namespace projrig
