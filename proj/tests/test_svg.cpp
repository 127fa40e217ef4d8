#include <string>

#include "doctest.h"
#include "projrig/generators.hpp"
#include "projrig/rigidity.hpp"
#include "projrig/svg.hpp"

using namespace projrig;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("rendering is deterministic and well-formed") {
  Configuration pap = pappus(true);
  std::string svg = render_svg(pap);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
  CHECK(render_svg(pap) == svg);
  // Never the negative-zero formatting artifact.
  CHECK(svg.find("-0.0000") == std::string::npos);
}

TEST_CASE("finite points get dots, ideal points get border markers") {
  std::string pap = render_svg(pappus(true));
  CHECK(count_of(pap, "r=\"4\"") == 9);
  CHECK(count_of(pap, "stroke=\"#8250df\"") == 0);

  std::string grid = render_svg(dyadic_grid(0));
  CHECK(count_of(grid, "r=\"4\"") == 6);
  // The four ideal direction points sit on the frame as hollow markers.
  CHECK(count_of(grid, "r=\"3\" fill=\"none\" stroke=\"#8250df\"") == 4);
}

TEST_CASE("pinned points are drawn hollow") {
  Configuration pap = pappus(true);
  PinningSystem pins;
  pins.points = {"b1", "t3"};
  SvgOptions opts;
  opts.pins = &pins;
  // One white fill for the background, one per pinned point.
  CHECK(count_of(render_svg(pap, opts), "fill=\"#ffffff\"") == 3);
  CHECK(count_of(render_svg(pap), "fill=\"#ffffff\"") == 1);
}

TEST_CASE("stress coefficients appear as exact text") {
  Configuration pap = pappus(true);
  auto stresses = self_stress_basis(pap);
  REQUIRE(stresses.size() == 1);
  SvgOptions opts;
  opts.stress = &stresses[0];
  std::string svg = render_svg(pap, opts);
  CHECK(svg.find(">-8<") != std::string::npos);
  CHECK(count_of(svg, "fill=\"#c0392b\"") == 27);
}

TEST_CASE("a flex draws ghost lines and velocity arrows") {
  Configuration pap = pappus(true);
  FlexBasis trivial = trivial_motion_basis(pap);
  SvgOptions opts;
  opts.flex = &trivial.vectors[4];  // unit x translation moves every line
  std::string svg = render_svg(pap, opts);
  CHECK(svg.find("stroke-dasharray=\"5,4\"") != std::string::npos);
  CHECK(count_of(svg, "stroke=\"#1a7f37\"") == 9);

  std::string still = render_svg(pap);
  CHECK(still.find("stroke-dasharray") == std::string::npos);
  CHECK(still.find("#1a7f37") == std::string::npos);
}

TEST_CASE("labels can be switched off") {
  Configuration pap = pappus(true);
  std::string labeled = render_svg(pap);
  CHECK(labeled.find(">b1<") != std::string::npos);
  CHECK(labeled.find(">l5<") != std::string::npos);

  SvgOptions opts;
  opts.entityLabels = false;
  std::string bare = render_svg(pap, opts);
  CHECK(bare.find("<text") == std::string::npos);
}
