#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projrig/geometry.hpp"

namespace projrig {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pure combinatorics: which point lies on which line. Declaration order of
// points and lines is significant (it fixes matrix column order), incidence
// order fixes matrix row order.
struct IncidenceStructure {
  std::vector<std::string> points;
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::string>> incidences;  // (point id, line id)

  bool operator==(const IncidenceStructure& other) const = default;

  bool has_point(const std::string& id) const;
  bool has_line(const std::string& id) const;
  bool has_incidence(const std::string& pointId, const std::string& lineId) const;
  std::vector<std::string> lines_through(const std::string& pointId) const;
  std::vector<std::string> points_on(const std::string& lineId) const;

  // Ids unique across both entity classes, every incidence references
  // declared ids, no duplicate incidences.
  void validate() const;
};

// A realization: coordinates for every declared entity. Incidences in the
// structure are required to hold exactly in the coordinates; validate()
// checks that.
struct Configuration {
  IncidenceStructure structure;
  std::map<std::string, HomogeneousTriple> coords;

  const HomogeneousTriple& point_at(const std::string& id) const;
  const HomogeneousTriple& line_at(const std::string& id) const;

  void validate() const;

  // First entity whose triple is not chart-valid (ideal point or line
  // through the origin), in declaration order; nullopt when chart-valid.
  std::optional<std::string> chart_violation() const;
  bool chart_valid() const { return !chart_violation().has_value(); }
};

Configuration make_configuration(IncidenceStructure structure,
                                 std::map<std::string, HomogeneousTriple> coords);

// Swaps the roles of points and lines, keeping triples and ids; incidence
// pairs flip to (old line, old point). An exact involution.
Configuration dualize(const Configuration& config);

// Applies an invertible projective transform to every entity. Preserves all
// incidences exactly.
Configuration apply_transform(const Mat3& transform, const Configuration& config);

struct NormalizationResult {
  Configuration config;
  Mat3 transform;
  std::uint32_t attempts = 0;
};

// Finds a projective transform making the configuration chart-valid by
// trying deterministic pseudo-random integer transforms derived from the
// seed. Throws ValidationError (naming a blocking entity) if maxAttempts
// transforms all fail.
NormalizationResult normalize_to_chart(const Configuration& config, std::uint64_t seed,
                                       std::uint32_t maxAttempts = 64);

// Copy with one more declared incidence; the pair must hold geometrically
// and not be declared yet.
Configuration with_incidence(const Configuration& config, const std::string& pointId,
                             const std::string& lineId);

// Copy without one declared incidence.
Configuration without_incidence(const Configuration& config, const std::string& pointId,
                                const std::string& lineId);

}  // namespace projrig
