#include "projrig/configuration.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace projrig {

bool IncidenceStructure::has_point(const std::string& id) const {
  return std::find(points.begin(), points.end(), id) != points.end();
}

bool IncidenceStructure::has_line(const std::string& id) const {
  return std::find(lines.begin(), lines.end(), id) != lines.end();
}

bool IncidenceStructure::has_incidence(const std::string& pointId,
                                       const std::string& lineId) const {
  return std::find(incidences.begin(), incidences.end(),
                   std::make_pair(pointId, lineId)) != incidences.end();
}

std::vector<std::string> IncidenceStructure::lines_through(const std::string& pointId) const {
  std::vector<std::string> out;
  for (const auto& [p, l] : incidences) {
    if (p == pointId) out.push_back(l);
  }
  return out;
}

std::vector<std::string> IncidenceStructure::points_on(const std::string& lineId) const {
  std::vector<std::string> out;
  for (const auto& [p, l] : incidences) {
    if (l == lineId) out.push_back(p);
  }
  return out;
}

void IncidenceStructure::validate() const {
  std::set<std::string> ids;
  for (const auto& id : points) {
    if (!ids.insert(id).second) throw ValidationError("duplicate id '" + id + "'");
  }
  for (const auto& id : lines) {
    if (!ids.insert(id).second) throw ValidationError("duplicate id '" + id + "'");
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& inc : incidences) {
    if (!has_point(inc.first)) {
      throw ValidationError("incidence references undeclared point '" + inc.first + "'");
    }
    if (!has_line(inc.second)) {
      throw ValidationError("incidence references undeclared line '" + inc.second + "'");
    }
    if (!seen.insert(inc).second) {
      throw ValidationError("duplicate incidence (" + inc.first + ", " + inc.second + ")");
    }
  }
}

const HomogeneousTriple& Configuration::point_at(const std::string& id) const {
  auto it = coords.find(id);
  if (it == coords.end() || it->second.kind != EntityKind::Point) {
    throw ValidationError("unknown point '" + id + "'");
  }
  return it->second;
}

const HomogeneousTriple& Configuration::line_at(const std::string& id) const {
  auto it = coords.find(id);
  if (it == coords.end() || it->second.kind != EntityKind::Line) {
    throw ValidationError("unknown line '" + id + "'");
  }
  return it->second;
}

void Configuration::validate() const {
  structure.validate();
  for (const auto& id : structure.points) {
    point_at(id);
  }
  for (const auto& id : structure.lines) {
    line_at(id);
  }
  if (coords.size() != structure.points.size() + structure.lines.size()) {
    throw ValidationError("coordinates present for undeclared entities");
  }
  for (const auto& [p, l] : structure.incidences) {
    const auto& pt = point_at(p);
    const auto& ln = line_at(l);
    Rational residual = dot(pt.coords, ln.coords);
    if (residual != 0) {
      throw ValidationError("declared incidence (" + p + ", " + l +
                            ") fails exactly: residual " + rational_to_string(residual));
    }
  }
}

std::optional<std::string> Configuration::chart_violation() const {
  for (const auto& id : structure.points) {
    if (!point_at(id).chart_valid()) return id;
  }
  for (const auto& id : structure.lines) {
    if (!line_at(id).chart_valid()) return id;
  }
  return std::nullopt;
}

Configuration make_configuration(IncidenceStructure structure,
                                 std::map<std::string, HomogeneousTriple> coords) {
  Configuration config{std::move(structure), std::move(coords)};
  config.validate();
  return config;
}

Configuration dualize(const Configuration& config) {
  Configuration dual;
  dual.structure.points = config.structure.lines;
  dual.structure.lines = config.structure.points;
  for (const auto& [p, l] : config.structure.incidences) {
    dual.structure.incidences.emplace_back(l, p);
  }
  for (const auto& [id, triple] : config.coords) {
    HomogeneousTriple flipped = triple;
    flipped.kind = triple.kind == EntityKind::Point ? EntityKind::Line : EntityKind::Point;
    dual.coords.emplace(id, flipped);
  }
  return dual;
}

Configuration apply_transform(const Mat3& transform, const Configuration& config) {
  Configuration image = config;
  for (auto& [id, triple] : image.coords) {
    triple = apply_transform(transform, triple);
  }
  return image;
}

NormalizationResult normalize_to_chart(const Configuration& config, std::uint64_t seed,
                                       std::uint32_t maxAttempts) {
  if (config.chart_valid()) {
    return NormalizationResult{config, Mat3::identity(), 0};
  }
  std::mt19937_64 engine(seed);
  auto smallInt = [&engine]() {
    return Rational(static_cast<long>(engine() % 17) - 8);
  };
  std::string lastBlocker;
  for (std::uint32_t attempt = 1; attempt <= maxAttempts; ++attempt) {
    Mat3 candidate;
    for (auto& row : candidate.rows) {
      for (auto& entry : row) {
        entry = smallInt();
      }
    }
    if (!candidate.invertible()) continue;
    Configuration image = apply_transform(candidate, config);
    if (auto blocker = image.chart_violation()) {
      lastBlocker = *blocker;
      continue;
    }
    return NormalizationResult{std::move(image), candidate, attempt};
  }
  throw ValidationError("normalize_to_chart gave up after " + std::to_string(maxAttempts) +
                        " attempts; last blocking entity '" + lastBlocker + "'");
}

Configuration with_incidence(const Configuration& config, const std::string& pointId,
                             const std::string& lineId) {
  const auto& pt = config.point_at(pointId);
  const auto& ln = config.line_at(lineId);
  if (config.structure.has_incidence(pointId, lineId)) {
    throw ValidationError("incidence (" + pointId + ", " + lineId + ") already declared");
  }
  if (dot(pt.coords, ln.coords) != 0) {
    throw ValidationError("pair (" + pointId + ", " + lineId + ") is not geometrically incident");
  }
  Configuration extended = config;
  extended.structure.incidences.emplace_back(pointId, lineId);
  return extended;
}

Configuration without_incidence(const Configuration& config, const std::string& pointId,
                                const std::string& lineId) {
  Configuration reduced = config;
  auto& incs = reduced.structure.incidences;
  auto it = std::find(incs.begin(), incs.end(), std::make_pair(pointId, lineId));
  if (it == incs.end()) {
    throw ValidationError("incidence (" + pointId + ", " + lineId + ") is not declared");
  }
  incs.erase(it);
  return reduced;
}

}  // namespace projrig
