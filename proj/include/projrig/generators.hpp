#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "projrig/analysis.hpp"
#include "projrig/configuration.hpp"

namespace projrig {

// Four points in general position with all six joins; the Fig-style unit
// placement (corners of the unit square). Not chart-valid as placed: the two
// diagonals pass through the origin.
Configuration complete_quadrangle();

// The identity-polarity dual: same triples with point/line roles swapped.
Configuration complete_quadrilateral();

// Nine points, nine lines, 27 incidences. With paperCoords the symmetric
// placement on y = -1, 1, 3 (whose configuration lines are recovered from
// maximal collinear sets, discarding the accidental vertical); otherwise a
// fixed generic placement built by joins and meets.
Configuration pappus(bool paperCoords);

// Ten points, ten lines, 30 incidences in (10_3) shape. paperCoords uses the
// symmetric placement with center (-3,0) and axis x = 3 (two accidental
// extra incidences pruned); otherwise a fixed generic center-and-triangles
// construction.
Configuration desargues(bool paperCoords);

// Hexagon-section configuration: a base line with three marked points, two
// further lines through each, and the six pairwise meets. The six meets lie
// on a common conic. 9 points, 7 lines, 21 incidences.
Configuration pascal97();

// Adds the join of two distinct declared points as a new line with its two
// incidences. Preserves independence and infinitesimal rigidity.
Configuration zero_extension_add_line(const Configuration& config, const std::string& pointA,
                                      const std::string& pointB,
                                      const std::string& newLineId = "");

// Adds the meet of two distinct declared lines as a new point with its two
// incidences.
Configuration zero_extension_add_point(const Configuration& config, const std::string& lineA,
                                       const std::string& lineB,
                                       const std::string& newPointId = "");

// Unit-square grid bisected level times: corners a-d, the four ideal points,
// and per level the boundary subdivision points, their diagonal joins, and
// the new horizontals/verticals each anchored at an off-square crossing.
// Contains ideal points and lines through the origin by construction.
// The level cap defaults to 6 and may be raised with the environment
// variable PROJRIG_MAX_GRID_LEVEL.
Configuration dyadic_grid(std::uint32_t level);
std::uint32_t max_grid_level();

enum class ConicMode { Tangent, Secant, Miss };

ConicMode conic_mode_from_string(const std::string& name);
std::string to_string(ConicMode mode);

// Conic-drawing linkage on the hyperbola xy = z^2 through the five pinned
// points a, b, c, d, e: the slider t on the rail oy steers the pencil
// through j; f = ai ∧ ek always lands on the conic. The probe line ox is
// tangent to, secant to, or missing the conic depending on the mode; the
// final (f, ox) incidence is declared in the first two modes only.
struct ConicMechanism {
  Configuration config;
  PinningSystem pins;
  ConicMode mode = ConicMode::Tangent;
  // Whether a realization with the final (f, ox) incidence exists over the
  // reals; false exactly in miss mode.
  bool finalIncidenceRealizable = true;
  // Second solution branch in secant mode: same structure and pins, the
  // other intersection point.
  std::optional<Configuration> altConfig;
};

ConicMechanism conic_mechanism(ConicMode mode);

// Deterministic pseudo-random chart-valid configuration grown by free
// entities and join/meet extensions; incidence count must be even and
// reachable. Every declared incidence holds exactly by construction.
Configuration random_configuration(std::uint64_t seed, std::size_t nPoints, std::size_t nLines,
                                   std::size_t targetIncidences);

}  // namespace projrig
