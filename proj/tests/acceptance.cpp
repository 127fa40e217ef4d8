// Acceptance gate: eleven checks, one PASS/FAIL line each, nonzero exit on
// any failure. Every numeric claim is exact rational arithmetic; the only
// tolerance anywhere is the numeric cross-check threshold inside
// numeric_rank, and criterion 11 demands the two ranks agree exactly anyway.
#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "projrig/analysis.hpp"
#include "projrig/generators.hpp"
#include "projrig/io.hpp"
#include "projrig/rigidity.hpp"
#include "projrig/svg.hpp"

using namespace projrig;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

Rational rq(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Configuration normalized(const Configuration& config, std::uint64_t seed = 1) {
  if (config.chart_valid()) return config;
  return normalize_to_chart(config, seed).config;
}

std::string point_id_at(const Configuration& config, const HomogeneousTriple& t) {
  for (const auto& id : config.structure.points) {
    if (config.point_at(id) == t) return id;
  }
  throw std::runtime_error("no point at the requested coordinates");
}

std::string line_id_matching(const Configuration& config, const HomogeneousTriple& t) {
  for (const auto& id : config.structure.lines) {
    if (config.line_at(id) == t) return id;
  }
  throw std::runtime_error("no line with the requested coordinates");
}

std::optional<Configuration> chart_valid_transform(const Configuration& config,
                                                   std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat3 m;
    for (auto& row : m.rows) {
      for (auto& entry : row) entry = rq(static_cast<long>(engine() % 17) - 8);
    }
    if (!m.invertible()) continue;
    Configuration image = apply_transform(m, config);
    if (image.chart_valid()) return image;
  }
  return std::nullopt;
}

bool collinear(const HomogeneousTriple& a, const HomogeneousTriple& b,
               const HomogeneousTriple& c) {
  Mat3 m;
  m.rows = {a.coords, b.coords, c.coords};
  Rational d = m.det();
  return d == 0;
}

bool has_four_general_position_points(const Configuration& config) {
  std::vector<HomogeneousTriple> pts;
  for (const auto& id : config.structure.points) pts.push_back(config.point_at(id));
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          if (!collinear(pts[a], pts[b], pts[c]) && !collinear(pts[a], pts[b], pts[d]) &&
              !collinear(pts[a], pts[c], pts[d]) && !collinear(pts[b], pts[c], pts[d])) {
            return true;
          }
        }
  return false;
}

std::size_t pinned_nullity_of(const Configuration& config, const PinningSystem& pins) {
  RigidityMatrix m = assemble(config, pins);
  return m.entries.cols() - m.entries.rank();
}

StressVector all_ones_stress(const Configuration& config) {
  StressVector s;
  for (const auto& [p, l] : config.structure.incidences) s.coefficient[{p, l}] = rq(1);
  return s;
}

StressVector perturbed(const StressVector& stress) {
  StressVector broken = stress;
  auto it = broken.coefficient.begin();
  it->second = Rational(it->second + 1);
  return broken;
}

// Name, chart-valid realization: the full set of built-in figures.
std::vector<std::pair<std::string, Configuration>> canonical_figures() {
  std::vector<std::pair<std::string, Configuration>> out;
  out.emplace_back("quadrangle", normalized(complete_quadrangle(), 1));
  out.emplace_back("quadrilateral", normalized(complete_quadrilateral(), 1));
  out.emplace_back("pappus", pappus(true));
  out.emplace_back("pappus-generic", pappus(false));
  out.emplace_back("desargues", desargues(true));
  out.emplace_back("desargues-generic", desargues(false));
  out.emplace_back("pascal", pascal97());
  out.emplace_back("grid0", normalized(dyadic_grid(0), 2));
  out.emplace_back("grid1", normalized(dyadic_grid(1), 2));
  out.emplace_back("grid2", normalized(dyadic_grid(2), 2));
  out.emplace_back("conic-tangent", conic_mechanism(ConicMode::Tangent).config);
  out.emplace_back("conic-secant", conic_mechanism(ConicMode::Secant).config);
  out.emplace_back("conic-miss", conic_mechanism(ConicMode::Miss).config);
  return out;
}

Check criterion_quadrangle_pair() {
  Check c;
  for (const auto& [name, config] :
       {std::pair<std::string, Configuration>{"quadrangle", complete_quadrangle()},
        {"quadrilateral", complete_quadrilateral()}}) {
    AnalysisReport r = analyze(normalized(config, 1));
    c.require(r.rank == 12, name + " rank " + std::to_string(r.rank.value_or(0)));
    c.require(r.nullity == 8, name + " nullity " + std::to_string(r.nullity.value_or(0)));
    c.require(r.stressDim == 0, name + " stressDim " + std::to_string(r.stressDim.value_or(99)));
    c.require(r.motionLabel == "isostatic", name + " labeled " + r.motionLabel);
  }
  return c;
}

Check criterion_pappus_stress() {
  Check c;
  Configuration pap = pappus(true);
  AnalysisReport r = analyze(pap);
  c.require(r.rank == 26, "rank " + std::to_string(r.rank.value_or(0)));
  c.require(r.stressDim == 1, "stressDim " + std::to_string(r.stressDim.value_or(0)));
  c.require(r.nontrivialFlexDim == 2,
            "nontrivialFlexDim " + std::to_string(r.nontrivialFlexDim.value_or(0)));

  auto basis = self_stress_basis(pap);
  if (basis.size() != 1) {
    c.require(false, "stress basis size " + std::to_string(basis.size()));
    return c;
  }
  // Anchor: the incidence of the point at (0,-1) with the diagonal toward
  // (-4,3) is rescaled to +1; every other value is then determined.
  std::string corner = point_id_at(pap, point(rq(0), rq(-1)));
  std::string diagonal = line_id_matching(pap, join(point(rq(0), rq(-1)), point(rq(-4), rq(3))));
  std::string bottom = line_id_matching(pap, join(point(rq(-4), rq(-1)), point(rq(4), rq(-1))));
  Rational anchor = basis[0].at(corner, diagonal);
  if (anchor == 0) {
    c.require(false, "anchor coefficient vanishes");
    return c;
  }
  StressVector scaled;
  for (const auto& [key, value] : basis[0].coefficient) {
    scaled.coefficient[key] = Rational(value / anchor);
  }
  c.require(scaled.at(corner, bottom) == rq(-2),
            "bottom coefficient " + rational_to_string(scaled.at(corner, bottom)));

  std::string heavy = point_id_at(pap, point(rq(-4), rq(-1)));
  std::vector<Rational> around;
  for (const auto& lid : pap.structure.lines_through(heavy)) {
    around.push_back(scaled.at(heavy, lid));
  }
  std::sort(around.begin(), around.end());
  std::vector<Rational> expected = {rq(-3), rq(1), rq(2)};
  c.require(around == expected, "corner coefficients off");

  SvgOptions opts;
  opts.stress = &scaled;
  std::string svg = render_svg(pap, opts);
  c.require(svg == render_svg(pap, opts), "svg not byte-deterministic");
  for (const char* label : {">-2<", ">-3<", ">1<", ">2<"}) {
    c.require(svg.find(label) != std::string::npos, std::string("svg misses ") + label);
  }
  return c;
}

Check criterion_desargues() {
  Check c;
  Configuration des = desargues(true);
  AnalysisReport r = analyze(des);
  c.require(r.nontrivialFlexDim == 3,
            "nontrivialFlexDim " + std::to_string(r.nontrivialFlexDim.value_or(0)));
  c.require(r.stressDim == 1, "stressDim " + std::to_string(r.stressDim.value_or(0)));
  auto basis = self_stress_basis(des);
  c.require(basis.size() == 1, "stress basis size " + std::to_string(basis.size()));
  if (!basis.empty()) {
    c.require(verify_three_fold_balance(des, basis[0]).balanced, "stress unbalanced");
  }
  return c;
}

Check criterion_pascal() {
  Check c;
  Configuration pas = pascal97();
  AnalysisReport r = analyze(pas);
  c.require(r.rank == 21, "rank " + std::to_string(r.rank.value_or(0)));
  c.require(r.independenceLabel == "independent", "labeled " + r.independenceLabel);
  c.require(r.nontrivialFlexDim == 3,
            "nontrivialFlexDim " + std::to_string(r.nontrivialFlexDim.value_or(0)));
  std::vector<HomogeneousTriple> hexagon;
  for (const char* id : {"m1", "m2", "m3", "m4", "m5", "m6"}) {
    hexagon.push_back(pas.point_at(id));
  }
  c.require(conic_condition_rank(hexagon) == 5, "hexagon conic rank not 5");
  return c;
}

Check criterion_counting() {
  Check c;
  AnalysisReport r = analyze_counts(95, 95, 440);
  c.require(r.dependent, "not flagged dependent");
  c.require(r.arithmeticMode == "counting", "mode " + r.arithmeticMode);
  c.require(!r.rank.has_value(), "rank computed without coordinates");
  c.require(r.independenceLabel == "dependent", "labeled " + r.independenceLabel);
  return c;
}

Check criterion_grids() {
  Check c;
  for (std::uint32_t level = 0; level <= 2; ++level) {
    std::string tag = "grid" + std::to_string(level) + " ";
    Configuration grid = dyadic_grid(level);
    std::size_t entities = grid.structure.points.size() + grid.structure.lines.size();
    std::size_t incidences = grid.structure.incidences.size();
    c.require(incidences == 2 * entities - 8, tag + "count off budget");

    auto detected = detect_geometric_incidences(grid);
    std::set<std::pair<std::string, std::string>> found(detected.begin(), detected.end());
    std::set<std::pair<std::string, std::string>> declared(grid.structure.incidences.begin(),
                                                           grid.structure.incidences.end());
    c.require(found == declared, tag + "undeclared geometric incidences");

    Configuration norm = normalized(grid, 2);
    AnalysisReport r = analyze(norm);
    c.require(r.rank == incidences, tag + "rank " + std::to_string(r.rank.value_or(0)));
    c.require(r.motionLabel == "isostatic", tag + "labeled " + r.motionLabel);

    // Four declared lines cross at (1/2, 1/2): the two unit-square diagonals
    // and the half-integer axis-parallel pair. Materialize the crossing on
    // two of them, then each remaining implied incidence must be dependent.
    Configuration withCenter = zero_extension_add_point(norm, "ac", "bd", "ctr");
    for (const char* lid : {"ep1", "fp2"}) {
      AddedIncidenceResult added = test_added_incidence(withCenter, "ctr", lid);
      c.require(!added.independent, tag + "implied incidence on " + lid + " not dependent");
      c.require(added.rankAfter == added.rankBefore, tag + "rank moved on " + lid);
    }
  }
  return c;
}

Check criterion_random_properties() {
  Check c;
  const std::vector<std::array<std::size_t, 3>> shapes = {
      {6, 6, 16}, {4, 8, 12}, {8, 4, 12}, {9, 7, 20}, {3, 3, 6}};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto& [nPoints, nLines, nIncidences] = shapes[seed % shapes.size()];
    Configuration config = random_configuration(seed, nPoints, nLines, nIncidences);
    std::string tag = "seed " + std::to_string(seed) + " ";

    RigidityMatrix m = assemble(config);
    FlexBasis trivial = trivial_motion_basis(config);
    for (std::size_t i = 0; i < trivial.vectors.size(); ++i) {
      std::vector<Rational> column = to_column_vector(trivial.vectors[i], m.layout);
      std::vector<Rational> image = m.entries.apply(column);
      bool zero = std::all_of(image.begin(), image.end(),
                              [](const Rational& r) { return r == 0; });
      c.require(zero, tag + "trivial motion " + std::to_string(i) + " escapes the kernel");
      if (!zero) return c;
    }

    std::size_t baseline = m.entries.rank();
    if (has_four_general_position_points(config)) {
      c.require(baseline == m.entries.rows(), tag + "rows dependent despite general position");
    }

    for (int t = 1; t <= 20; ++t) {
      auto image = chart_valid_transform(config, seed * 1000 + t);
      if (!image) continue;
      std::size_t imageRank = assemble(*image).entries.rank();
      if (imageRank != baseline) {
        c.require(false, tag + "rank moved under transform " + std::to_string(t));
        return c;
      }
    }
    c.require(assemble(dualize(config)).entries.rank() == baseline, tag + "rank moved under dualize");
    if (!c.ok) return c;
  }
  return c;
}

Check criterion_pinning() {
  Check c;
  Configuration quadri = normalized(complete_quadrilateral(), 1);
  PinningSystem frame;
  frame.points = {"ab", "bc", "cd", "da"};
  c.require(pinned_nullity_of(quadri, frame) == 0, "projective frame leaves motions");

  std::vector<std::pair<std::string, Configuration>> rigid = {
      {"quadrangle", normalized(complete_quadrangle(), 1)},
      {"quadrilateral", quadri},
      {"grid0", normalized(dyadic_grid(0), 2)},
      {"grid1", normalized(dyadic_grid(1), 2)},
      {"grid2", normalized(dyadic_grid(2), 2)},
  };
  for (const auto& [name, config] : rigid) {
    const auto& pts = config.structure.points;
    const auto& lns = config.structure.lines;
    std::vector<PinningSystem> choices(2);
    choices[0].points = {pts.front(), pts[1]};
    choices[0].lines = {lns.front(), lns[1]};
    choices[1].points = {pts.front(), pts.back()};
    choices[1].lines = {lns.front(), lns.back()};
    for (std::size_t i = 0; i < choices.size(); ++i) {
      std::size_t nullity = pinned_nullity_of(config, choices[i]);
      c.require(nullity >= 1, name + " choice " + std::to_string(i) +
                                  " pinned nullity " + std::to_string(nullity));
    }
  }
  return c;
}

Check criterion_balance_equivalence() {
  Check c;
  auto check_config = [&c](const std::string& name, const Configuration& config) {
    auto basis = self_stress_basis(config);
    for (const auto& stress : basis) {
      c.require(verify_three_fold_balance(config, stress).balanced,
                name + " cokernel vector unbalanced");
    }
    StressVector nonStress = basis.empty() ? all_ones_stress(config) : perturbed(basis[0]);
    c.require(!verify_three_fold_balance(config, nonStress).balanced,
              name + " non-cokernel vector balanced");
  };

  for (const auto& [name, config] : canonical_figures()) check_config(name, config);

  for (int i = 1; i <= 50; ++i) {
    Configuration base = (i % 2 == 0) ? pappus(true) : desargues(true);
    auto image = chart_valid_transform(base, 7000 + static_cast<std::uint64_t>(i));
    if (!image) {
      c.require(false, "no chart-valid transform for dependent case " + std::to_string(i));
      continue;
    }
    check_config("dependent" + std::to_string(i), *image);
    if (!c.ok) return c;
  }
  return c;
}

Check criterion_conic_mechanism() {
  Check c;
  ConicMechanism tangent = conic_mechanism(ConicMode::Tangent);
  SecondOrderSummary ts = second_order_rigidity_verdict(tangent.config, tangent.pins);
  c.require(ts.pinnedNullity == 1, "tangent pinned nullity " + std::to_string(ts.pinnedNullity));
  c.require(ts.verdict == SecondOrderVerdict::Rigid, "tangent verdict not rigid");
  c.require(ts.generatorTest.has_value() && !ts.generatorTest->extendable &&
                ts.generatorTest->obstructionRow.has_value(),
            "tangent extension not obstructed");

  Configuration released = without_incidence(tangent.config, "f", "ox");
  SecondOrderSummary rs = second_order_rigidity_verdict(released, tangent.pins);
  c.require(rs.pinnedNullity == 1, "released pinned nullity " + std::to_string(rs.pinnedNullity));
  c.require(rs.generatorTest.has_value() && rs.generatorTest->extendable,
            "released extension not extendable");
  c.require(rs.verdict == SecondOrderVerdict::Flexible, "released verdict not flexible");

  ConicMechanism secant = conic_mechanism(ConicMode::Secant);
  c.require(secant.altConfig.has_value(), "secant missing second branch");
  if (secant.altConfig) {
    SecondOrderSummary sa = second_order_rigidity_verdict(secant.config, secant.pins);
    SecondOrderSummary sb = second_order_rigidity_verdict(*secant.altConfig, secant.pins);
    c.require(sa.pinnedNullity == 0 && sa.vacuous, "secant branch a not isolated");
    c.require(sb.pinnedNullity == 0 && sb.vacuous, "secant branch b not isolated");
    c.require(compare_realizations(secant.config, *secant.altConfig, secant.pins) ==
                  RealizationComparison::Distinct,
              "secant branches not distinct");
  }

  ConicMechanism miss = conic_mechanism(ConicMode::Miss);
  c.require(!miss.finalIncidenceRealizable, "miss mode claims a realization");
  c.require(!miss.config.structure.has_incidence("f", "ox"), "miss declares the final incidence");
  return c;
}

Check criterion_numeric_agreement() {
  Check c;
  for (const auto& [name, config] : canonical_figures()) {
    RigidityMatrix m = assemble(config);
    std::size_t exact = m.entries.rank();
    NumericRank numeric = numeric_rank(m);
    c.require(numeric.rank == exact,
              name + " exact " + std::to_string(exact) + " vs numeric " +
                  std::to_string(numeric.rank));
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    std::string name;
    Check (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "quadrangle and quadrilateral are isostatic at rank 12", criterion_quadrangle_pair},
      {2, "pappus rank, flex and anchored stress values", criterion_pappus_stress},
      {3, "desargues flex dimension and balanced stress", criterion_desargues},
      {4, "pascal figure independence and hexagon conic", criterion_pascal},
      {5, "hexagrammum counting path reports dependence", criterion_counting},
      {6, "dyadic grids are isostatic with dependent implied incidences", criterion_grids},
      {7, "trivial motions, genericity and invariance on random configurations",
       criterion_random_properties},
      {8, "pinning a projective frame vs two points and two lines", criterion_pinning},
      {9, "cokernel membership equals three-fold balance", criterion_balance_equivalence},
      {10, "conic mechanism second-order behavior", criterion_conic_mechanism},
      {11, "exact and numeric ranks agree on every figure", criterion_numeric_agreement},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    std::cout << (result.ok ? "PASS" : "FAIL") << "  " << criterion.number << ". "
              << criterion.name;
    if (!result.ok) std::cout << "  [" << result.detail << "]";
    std::cout << "\n";
    if (!result.ok) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criteria failing\n";
    return 1;
  }
  std::cout << "all 11 criteria pass\n";
  return 0;
}
