#pragma once

#include <string>

#include "projrig/configuration.hpp"
#include "projrig/rigidity.hpp"

namespace projrig {

// Rendering is double precision (display only; nothing feeds back into the
// exact pipeline) and deterministic: fixed 4-decimal formatting, entities in
// declaration order.
struct SvgOptions {
  double scale = 60.0;            // pixels per chart unit
  double paddingFraction = 0.2;   // border added around the finite-point bounding box
  double flexEpsilon = 0.25;      // chart offset per unit velocity for ghost positions
  const PinningSystem* pins = nullptr;      // pinned points drawn hollow
  const StressVector* stress = nullptr;     // coefficient labels next to each incidence
  const FlexVector* flex = nullptr;         // velocity arrows and ghost lines
  bool entityLabels = true;
};

std::string render_svg(const Configuration& config, const SvgOptions& options = {});

}  // namespace projrig
