#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "projrig/analysis.hpp"
#include "projrig/generators.hpp"
#include "projrig/io.hpp"
#include "projrig/svg.hpp"

namespace {

using namespace projrig;
using nlohmann::ordered_json;

struct ChartArgs {
  std::optional<std::uint64_t> normalizeSeed;
};

// Matrix operations need every entity in the affine chart. Callers opt into
// an automatic projective move with --normalize-seed; otherwise a
// non-chart-valid input is an error that names the blocking entity.
Configuration ensure_chart(const Configuration& config, const ChartArgs& chart) {
  if (config.chart_valid()) return config;
  if (!chart.normalizeSeed) {
    throw ChartValidityError("entity '" + *config.chart_violation() +
                             "' is not chart-valid; pass --normalize-seed to analyze a "
                             "projectively moved copy");
  }
  NormalizationResult moved = normalize_to_chart(config, *chart.normalizeSeed);
  std::cerr << "note: applied a chart normalization (seed " << *chart.normalizeSeed << ", "
            << moved.attempts << " attempt(s))\n";
  return moved.config;
}

void add_chart_option(CLI::App* cmd, ChartArgs& chart) {
  cmd->add_option("--normalize-seed", chart.normalizeSeed,
                  "move a non-chart-valid input by a seeded random projective transform");
}

PinningSystem pins_from(const ConfigFile& file, const std::vector<std::string>& pinPoints,
                        const std::vector<std::string>& pinLines) {
  PinningSystem pins = file.pins;
  pins.points.insert(pins.points.end(), pinPoints.begin(), pinPoints.end());
  pins.lines.insert(pins.lines.end(), pinLines.begin(), pinLines.end());
  pins.validate_against(file.config.structure);
  return pins;
}

ordered_json flex_to_json(const FlexVector& v) {
  ordered_json out;
  out["points"] = ordered_json::object();
  out["lines"] = ordered_json::object();
  for (const auto& [id, vel] : v.pointVelocity) {
    out["points"][id] = {rational_to_string(vel.first), rational_to_string(vel.second)};
  }
  for (const auto& [id, vel] : v.lineVelocity) {
    out["lines"][id] = {rational_to_string(vel.first), rational_to_string(vel.second)};
  }
  return out;
}

void print_flex(const FlexVector& v) {
  for (const auto& [id, vel] : v.pointVelocity) {
    std::cout << "  point " << id << ": (" << rational_to_string(vel.first) << ", "
              << rational_to_string(vel.second) << ")\n";
  }
  for (const auto& [id, vel] : v.lineVelocity) {
    std::cout << "  line " << id << ": (" << rational_to_string(vel.first) << ", "
              << rational_to_string(vel.second) << ")\n";
  }
}

ordered_json stress_to_json(const StressVector& s) {
  ordered_json out = ordered_json::array();
  for (const auto& [key, coeff] : s.coefficient) {
    out.push_back({{"point", key.first}, {"line", key.second},
                   {"coefficient", rational_to_string(coeff)}});
  }
  return out;
}

// Kernel vectors that extend the trivial-motion span, found by exact rank
// growth; their count is the nontrivial flex dimension.
std::vector<FlexVector> nontrivial_representatives(const Configuration& config,
                                                   const FlexBasis& kernel) {
  FlexBasis trivial = trivial_motion_basis(config);
  ExactMatrix stacked(0, kernel.layout.cols());
  for (const auto& v : trivial.vectors) {
    stacked.append_row(to_column_vector(v, kernel.layout));
  }
  std::size_t baseRank = stacked.rank();
  std::vector<FlexVector> out;
  for (const auto& v : kernel.vectors) {
    stacked.append_row(to_column_vector(v, kernel.layout));
    std::size_t newRank = stacked.rank();
    if (newRank > baseRank) {
      baseRank = newRank;
      out.push_back(v);
    }
  }
  return out;
}

int run_generate(const std::string& name, bool paperCoords, std::uint32_t level,
                 const std::string& conicMode, std::uint64_t seed, std::size_t nPoints,
                 std::size_t nLines, std::size_t nIncidences, const std::string& output) {
  Configuration config;
  PinningSystem pins;
  if (name == "quadrangle") {
    config = complete_quadrangle();
  } else if (name == "quadrilateral") {
    config = complete_quadrilateral();
  } else if (name == "pappus") {
    config = pappus(paperCoords);
  } else if (name == "desargues") {
    config = desargues(paperCoords);
  } else if (name == "pascal") {
    config = pascal97();
  } else if (name == "grid") {
    config = dyadic_grid(level);
  } else if (name == "random") {
    config = random_configuration(seed, nPoints, nLines, nIncidences);
  } else if (name == "conic") {
    ConicMechanism mech = conic_mechanism(conic_mode_from_string(conicMode));
    config = mech.config;
    pins = mech.pins;
    std::cout << "conic mechanism, mode " << to_string(mech.mode) << "\n";
    std::cout << "final incidence realizable over the reals: "
              << (mech.finalIncidenceRealizable ? "yes" : "no") << "\n";
    if (mech.altConfig) {
      std::filesystem::path alt(output);
      alt.replace_extension(".alt.json");
      save_configuration(*mech.altConfig, pins, alt);
      std::cout << "second realization written to " << alt.string() << "\n";
    }
  } else {
    throw ValidationError("unknown figure '" + name +
                          "'; known: quadrangle quadrilateral pappus desargues pascal grid "
                          "conic random");
  }
  save_configuration(config, pins, output);
  std::cout << "wrote " << output << " (" << config.structure.points.size() << " points, "
            << config.structure.lines.size() << " lines, "
            << config.structure.incidences.size() << " incidences)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rigidity analysis of point-line incidence configurations"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "emit a built-in configuration as JSON");
  std::string genName, genOutput, conicMode = "tangent";
  bool paperCoords = false;
  std::uint32_t gridLevel = 1;
  std::uint64_t rngSeed = 1;
  std::size_t rngPoints = 6, rngLines = 6, rngIncidences = 16;
  gen->add_option("name", genName, "figure name")->required();
  gen->add_option("-o,--output", genOutput, "output JSON file")->required();
  gen->add_flag("--paper-coords", paperCoords, "use the symmetric textbook placements");
  gen->add_option("--level", gridLevel, "grid refinement level");
  gen->add_option("--mode", conicMode, "conic probe mode: tangent, secant or miss");
  gen->add_option("--seed", rngSeed, "random figure seed");
  gen->add_option("--points", rngPoints, "random figure point count");
  gen->add_option("--lines", rngLines, "random figure line count");
  gen->add_option("--incidences", rngIncidences, "random figure incidence target (even)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "rank, motions and stresses of a configuration");
  std::string anaInput, anaDumpMatrix;
  std::vector<std::string> anaPins, anaPinLines;
  bool anaNumeric = false, anaJson = false;
  ChartArgs anaChart;
  ana->add_option("input", anaInput, "configuration JSON file")->required();
  ana->add_option("--pin", anaPins, "point ids to pin")->delimiter(',');
  ana->add_option("--pin-line", anaPinLines, "line ids to pin")->delimiter(',');
  ana->add_flag("--numeric", anaNumeric, "cross-check the rank with a double-precision SVD");
  ana->add_flag("--json", anaJson, "emit the report as JSON");
  ana->add_option("--dump-matrix", anaDumpMatrix, "write the rigidity matrix as CSV");
  add_chart_option(ana, anaChart);

  // stress
  auto* str = app.add_subcommand("stress", "self-stress basis of a configuration");
  std::string strInput;
  bool strJson = false, strBalance = false;
  ChartArgs strChart;
  str->add_option("input", strInput, "configuration JSON file")->required();
  str->add_flag("--verify-balance", strBalance, "check the per-line and per-point balance sums");
  str->add_flag("--json", strJson, "emit the basis as JSON");
  add_chart_option(str, strChart);

  // flex
  auto* flx = app.add_subcommand("flex", "kernel basis (infinitesimal motions)");
  std::string flxInput;
  std::vector<std::string> flxPins, flxPinLines;
  bool flxJson = false, flxNontrivial = false;
  ChartArgs flxChart;
  flx->add_option("input", flxInput, "configuration JSON file")->required();
  flx->add_option("--pin", flxPins, "point ids to pin")->delimiter(',');
  flx->add_option("--pin-line", flxPinLines, "line ids to pin")->delimiter(',');
  flx->add_flag("--nontrivial-only", flxNontrivial,
                "report only motions outside the trivial projective span");
  flx->add_flag("--json", flxJson, "emit the basis as JSON");
  add_chart_option(flx, flxChart);

  // second-order
  auto* sec = app.add_subcommand("second-order", "second-order extension test of a pinned flex");
  std::string secInput;
  std::vector<std::string> secPins, secPinLines;
  bool secJson = false;
  ChartArgs secChart;
  sec->add_option("input", secInput, "configuration JSON file")->required();
  sec->add_option("--pin", secPins, "point ids to pin")->delimiter(',');
  sec->add_option("--pin-line", secPinLines, "line ids to pin")->delimiter(',');
  sec->add_flag("--json", secJson, "emit the verdict as JSON");
  add_chart_option(sec, secChart);

  // svg
  auto* svg = app.add_subcommand("svg", "render a configuration to SVG");
  std::string svgInput, svgOutput, svgAnchor;
  std::vector<std::string> svgPins, svgPinLines;
  bool svgStress = false, svgFlex = false, svgNoLabels = false;
  std::size_t svgStressIndex = 0, svgFlexIndex = 0;
  double svgScale = 60.0;
  ChartArgs svgChart;
  svg->add_option("input", svgInput, "configuration JSON file")->required();
  svg->add_option("-o,--output", svgOutput, "output SVG file")->required();
  svg->add_flag("--stress", svgStress, "overlay self-stress coefficients");
  svg->add_option("--stress-index", svgStressIndex, "which basis stress to draw");
  svg->add_option("--stress-anchor", svgAnchor,
                  "point,line incidence whose coefficient is scaled to 1");
  svg->add_flag("--flex", svgFlex, "overlay a kernel motion as arrows and ghost lines");
  svg->add_option("--flex-index", svgFlexIndex, "which kernel vector to draw");
  svg->add_option("--pin", svgPins, "point ids to pin")->delimiter(',');
  svg->add_option("--pin-line", svgPinLines, "line ids to pin")->delimiter(',');
  svg->add_option("--scale", svgScale, "pixels per chart unit");
  svg->add_flag("--no-labels", svgNoLabels, "omit entity id labels");
  add_chart_option(svg, svgChart);

  // dualize
  auto* dua = app.add_subcommand("dualize", "swap the roles of points and lines");
  std::string duaInput, duaOutput;
  dua->add_option("input", duaInput, "configuration JSON file")->required();
  dua->add_option("-o,--output", duaOutput, "output JSON file")->required();

  // extend
  auto* ext = app.add_subcommand("extend", "add a joining line or meeting point");
  std::string extInput, extOutput, extAddLine, extAddPoint, extId;
  ext->add_option("input", extInput, "configuration JSON file")->required();
  ext->add_option("-o,--output", extOutput, "output JSON file")->required();
  ext->add_option("--add-line", extAddLine, "p,q: new line through two points");
  ext->add_option("--add-point", extAddPoint, "l,m: new point on two lines");
  ext->add_option("--id", extId, "id for the new entity");

  // detect
  auto* det = app.add_subcommand("detect", "list undeclared geometric incidences");
  std::string detInput;
  det->add_option("input", detInput, "configuration JSON file")->required();

  // test-incidence
  auto* tst = app.add_subcommand("test-incidence",
                                 "does declaring one more incidence raise the rank?");
  std::string tstInput, tstPoint, tstLine;
  ChartArgs tstChart;
  tst->add_option("input", tstInput, "configuration JSON file")->required();
  tst->add_option("--point", tstPoint, "point id")->required();
  tst->add_option("--line", tstLine, "line id")->required();
  add_chart_option(tst, tstChart);

  gen->callback([&]() {
    run_generate(genName, paperCoords, gridLevel, conicMode, rngSeed, rngPoints, rngLines,
                 rngIncidences, genOutput);
  });

  ana->callback([&]() {
    ConfigFile file = load_configuration(anaInput);
    Configuration config = ensure_chart(file.config, anaChart);
    PinningSystem pins = pins_from(file, anaPins, anaPinLines);
    AnalysisReport report = analyze(config, pins);
    std::optional<NumericRank> numeric;
    if (anaNumeric || !anaDumpMatrix.empty()) {
      RigidityMatrix m = assemble(config, pins);
      if (anaNumeric) numeric = numeric_rank(m);
      if (!anaDumpMatrix.empty()) write_matrix_csv(m, anaDumpMatrix);
    }
    if (anaJson) {
      ordered_json doc = ordered_json::parse(report_to_json(report));
      if (numeric) {
        std::size_t exactPinned = report.pinnedRank ? *report.pinnedRank : *report.rank;
        doc["numeric"] = {{"rank", numeric->rank},
                          {"threshold", numeric->threshold},
                          {"agreesWithExact", numeric->rank == exactPinned}};
      }
      std::cout << doc.dump(2) << "\n";
      return;
    }
    std::cout << report.pointCount << " points, " << report.lineCount << " lines, "
              << report.incidenceCount << " incidences (budget " << report.dofBudget << ")\n";
    std::cout << "rank " << *report.rank << ", nullity " << *report.nullity << ", trivial span "
              << *report.trivialSpanDim << "\n";
    std::cout << "nontrivial flexes " << *report.nontrivialFlexDim << ", self-stresses "
              << *report.stressDim << "\n";
    if (report.pinnedRank) {
      std::cout << "pinned: rank " << *report.pinnedRank << ", nullity " << *report.pinnedNullity
                << "\n";
    }
    std::cout << report.independenceLabel << ", " << report.motionLabel << "\n";
    if (numeric) {
      std::size_t exactPinned = report.pinnedRank ? *report.pinnedRank : *report.rank;
      std::cout << "numeric rank " << numeric->rank << " (threshold " << numeric->threshold
                << "): " << (numeric->rank == exactPinned ? "agrees" : "DISAGREES") << "\n";
    }
    if (!anaDumpMatrix.empty()) {
      std::cout << "matrix written to " << anaDumpMatrix << "\n";
    }
  });

  str->callback([&]() {
    ConfigFile file = load_configuration(strInput);
    Configuration config = ensure_chart(file.config, strChart);
    std::vector<StressVector> basis = self_stress_basis(config);
    std::vector<BalanceReport> balances;
    if (strBalance) {
      for (const auto& s : basis) balances.push_back(verify_three_fold_balance(config, s));
    }
    if (strJson) {
      ordered_json doc;
      doc["schema"] = "report/v1";
      doc["stressDim"] = basis.size();
      doc["basis"] = ordered_json::array();
      for (const auto& s : basis) doc["basis"].push_back(stress_to_json(s));
      if (strBalance) {
        doc["balanced"] = ordered_json::array();
        for (const auto& b : balances) doc["balanced"].push_back(b.balanced);
      }
      std::cout << doc.dump(2) << "\n";
      return;
    }
    std::cout << "self-stress dimension " << basis.size() << "\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::cout << "stress " << i << ":\n";
      for (const auto& [key, coeff] : basis[i].coefficient) {
        std::cout << "  (" << key.first << ", " << key.second
                  << "): " << rational_to_string(coeff) << "\n";
      }
      if (strBalance) {
        std::cout << "  balance: " << (balances[i].balanced ? "holds" : "VIOLATED") << "\n";
      }
    }
  });

  flx->callback([&]() {
    ConfigFile file = load_configuration(flxInput);
    Configuration config = ensure_chart(file.config, flxChart);
    PinningSystem pins = pins_from(file, flxPins, flxPinLines);
    RigidityMatrix m = assemble(config, pins);
    RankComputation rc = exact_rank_kernel_cokernel(m);
    std::vector<FlexVector> shown = rc.kernel.vectors;
    std::string kind = "kernel";
    if (flxNontrivial) {
      if (!pins.empty()) {
        throw ValidationError("--nontrivial-only applies to the unpinned kernel");
      }
      shown = nontrivial_representatives(config, rc.kernel);
      kind = "nontrivial";
    }
    if (flxJson) {
      ordered_json doc;
      doc["schema"] = "report/v1";
      doc["rank"] = rc.rank;
      doc["nullity"] = rc.nullity;
      doc[kind == "kernel" ? "kernel" : "nontrivial"] = ordered_json::array();
      for (const auto& v : shown) {
        doc[kind == "kernel" ? "kernel" : "nontrivial"].push_back(flex_to_json(v));
      }
      std::cout << doc.dump(2) << "\n";
      return;
    }
    std::cout << "rank " << rc.rank << ", nullity " << rc.nullity << ", showing " << shown.size()
              << " " << kind << " vector(s)\n";
    for (std::size_t i = 0; i < shown.size(); ++i) {
      std::cout << kind << " " << i << ":\n";
      print_flex(shown[i]);
    }
  });

  sec->callback([&]() {
    ConfigFile file = load_configuration(secInput);
    Configuration config = ensure_chart(file.config, secChart);
    PinningSystem pins = pins_from(file, secPins, secPinLines);
    SecondOrderSummary summary = second_order_rigidity_verdict(config, pins);
    if (secJson) {
      ordered_json doc;
      doc["schema"] = "report/v1";
      doc["verdict"] = to_string(summary.verdict);
      doc["pinnedNullity"] = summary.pinnedNullity;
      doc["vacuous"] = summary.vacuous;
      if (summary.generatorTest) {
        doc["generator"] = {{"extendable", summary.generatorTest->extendable}};
        if (summary.generatorTest->obstructionRow) {
          doc["generator"]["obstructionRow"] = *summary.generatorTest->obstructionRow;
        }
      }
      std::cout << doc.dump(2) << "\n";
      return;
    }
    std::cout << "pinned nullity " << summary.pinnedNullity << "\n";
    if (summary.vacuous) {
      std::cout << "no first-order motion to extend; " << to_string(summary.verdict) << "\n";
      return;
    }
    if (summary.generatorTest) {
      if (summary.generatorTest->extendable) {
        std::cout << "kernel generator extends to second order\n";
      } else {
        std::cout << "kernel generator is obstructed (echelon row "
                  << *summary.generatorTest->obstructionRow << ")\n";
      }
    } else {
      std::cout << "kernel dimension too large for the single-generator test\n";
    }
    std::cout << to_string(summary.verdict) << "\n";
  });

  svg->callback([&]() {
    ConfigFile file = load_configuration(svgInput);
    Configuration config = ensure_chart(file.config, svgChart);
    PinningSystem pins = pins_from(file, svgPins, svgPinLines);
    SvgOptions options;
    options.scale = svgScale;
    options.entityLabels = !svgNoLabels;
    options.pins = &pins;
    StressVector stress;
    FlexVector flexVec;
    if (svgStress) {
      std::vector<StressVector> basis = self_stress_basis(config);
      if (svgStressIndex >= basis.size()) {
        throw ValidationError("stress index " + std::to_string(svgStressIndex) +
                              " out of range; dimension is " + std::to_string(basis.size()));
      }
      stress = basis[svgStressIndex];
      if (!svgAnchor.empty()) {
        auto comma = svgAnchor.find(',');
        if (comma == std::string::npos) {
          throw ValidationError("--stress-anchor expects point,line");
        }
        Rational at = stress.at(svgAnchor.substr(0, comma), svgAnchor.substr(comma + 1));
        if (at == 0) {
          throw ValidationError("anchor coefficient is zero; pick another incidence");
        }
        for (auto& [key, coeff] : stress.coefficient) coeff /= at;
      }
      options.stress = &stress;
    }
    if (svgFlex) {
      RigidityMatrix m = assemble(config, pins);
      RankComputation rc = exact_rank_kernel_cokernel(m);
      if (svgFlexIndex >= rc.kernel.vectors.size()) {
        throw ValidationError("flex index " + std::to_string(svgFlexIndex) +
                              " out of range; nullity is " +
                              std::to_string(rc.kernel.vectors.size()));
      }
      flexVec = rc.kernel.vectors[svgFlexIndex];
      options.flex = &flexVec;
    }
    write_text_atomically(render_svg(config, options), svgOutput);
    std::cout << "wrote " << svgOutput << "\n";
  });

  dua->callback([&]() {
    ConfigFile file = load_configuration(duaInput);
    save_configuration(dualize(file.config), PinningSystem{}, duaOutput);
    std::cout << "wrote " << duaOutput << "\n";
  });

  ext->callback([&]() {
    if (extAddLine.empty() == extAddPoint.empty()) {
      throw ValidationError("pass exactly one of --add-line or --add-point");
    }
    ConfigFile file = load_configuration(extInput);
    const std::string& spec = extAddLine.empty() ? extAddPoint : extAddLine;
    auto comma = spec.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("expected two comma-separated ids");
    }
    std::string first = spec.substr(0, comma), second = spec.substr(comma + 1);
    Configuration extended =
        extAddLine.empty()
            ? zero_extension_add_point(file.config, first, second, extId)
            : zero_extension_add_line(file.config, first, second, extId);
    save_configuration(extended, file.pins, extOutput);
    std::cout << "wrote " << extOutput << "\n";
  });

  det->callback([&]() {
    ConfigFile file = load_configuration(detInput);
    std::size_t undeclared = 0;
    for (const auto& [p, l] : detect_geometric_incidences(file.config)) {
      if (!file.config.structure.has_incidence(p, l)) {
        std::cout << p << " lies on " << l << " (undeclared)\n";
        ++undeclared;
      }
    }
    std::cout << undeclared << " undeclared geometric incidence(s)\n";
  });

  tst->callback([&]() {
    ConfigFile file = load_configuration(tstInput);
    Configuration config = ensure_chart(file.config, tstChart);
    AddedIncidenceResult result = test_added_incidence(config, tstPoint, tstLine);
    std::cout << "rank " << result.rankBefore << " -> " << result.rankAfter << ": "
              << (result.independent ? "independent" : "dependent") << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
