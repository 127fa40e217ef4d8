#include "projrig/analysis.hpp"

#include <algorithm>

namespace projrig {

namespace {

void fill_labels(AnalysisReport& report) {
  report.independenceLabel = report.dependent ? "dependent" : "independent";
  if (report.nontrivialFlexDim && *report.nontrivialFlexDim > 0) {
    report.motionLabel = "flexible";
  } else if (report.dependent) {
    report.motionLabel = "overbraced";
  } else {
    report.motionLabel = "isostatic";
  }
}

}  // namespace

AnalysisReport analyze(const Configuration& config, const PinningSystem& pins) {
  AnalysisReport report;
  report.pointCount = config.structure.points.size();
  report.lineCount = config.structure.lines.size();
  report.incidenceCount = config.structure.incidences.size();
  report.dofBudget = 2 * static_cast<long long>(report.pointCount + report.lineCount) - 8;
  report.arithmeticMode = "exact-rational";

  RigidityMatrix unpinned = assemble(config);
  std::size_t rank = unpinned.entries.rank();
  report.rank = rank;
  report.nullity = unpinned.entries.cols() - rank;
  report.trivialSpanDim = trivial_span_dimension(config);
  report.nontrivialFlexDim = *report.nullity - *report.trivialSpanDim;
  report.stressDim = report.incidenceCount - rank;
  report.dependent = *report.stressDim > 0;

  if (!pins.empty()) {
    RigidityMatrix pinned = assemble(config, pins);
    report.pinnedRank = pinned.entries.rank();
    report.pinnedNullity = pinned.entries.cols() - *report.pinnedRank;
  }
  fill_labels(report);
  return report;
}

AnalysisReport analyze_counts(std::size_t points, std::size_t lines, std::size_t incidences) {
  AnalysisReport report;
  report.pointCount = points;
  report.lineCount = lines;
  report.incidenceCount = incidences;
  report.dofBudget = 2 * static_cast<long long>(points + lines) - 8;
  report.arithmeticMode = "counting";
  report.dependent = static_cast<long long>(incidences) > report.dofBudget;
  report.independenceLabel = report.dependent ? "dependent" : "undetermined-by-counting";
  report.motionLabel = report.dependent ? "overbraced" : "undetermined-by-counting";
  return report;
}

AddedIncidenceResult test_added_incidence(const Configuration& config,
                                          const std::string& pointId,
                                          const std::string& lineId) {
  Configuration extended = with_incidence(config, pointId, lineId);
  AddedIncidenceResult result;
  result.rankBefore = assemble(config).entries.rank();
  result.rankAfter = assemble(extended).entries.rank();
  result.independent = result.rankAfter > result.rankBefore;
  return result;
}

std::vector<std::pair<std::string, std::string>> detect_geometric_incidences(
    const Configuration& config) {
  std::vector<std::pair<std::string, std::string>> found;
  for (const auto& p : config.structure.points) {
    const auto& pt = config.point_at(p);
    for (const auto& l : config.structure.lines) {
      if (dot(pt.coords, config.line_at(l).coords) == 0) {
        found.emplace_back(p, l);
      }
    }
  }
  return found;
}

BalanceReport verify_three_fold_balance(const Configuration& config,
                                        const StressVector& stress) {
  BalanceReport report;
  report.balanced = true;

  for (const auto& l : config.structure.lines) {
    BalanceEntry entry;
    entry.entityId = l;
    entry.combinatorialSum = 0;
    entry.momentVector = Vec3{Rational(0), Rational(0), Rational(0)};
    const auto& lineTriple = config.line_at(l);
    for (const auto& p : config.structure.points_on(l)) {
      const auto& pointTriple = config.point_at(p);
      Rational w = stress.at(p, l);
      if (!pointTriple.chart_valid()) {
        entry.excluded.push_back(p);
        continue;
      }
      auto [x, y] = pointTriple.affine();
      entry.combinatorialSum += w;
      Vec3 normalized{x, y, Rational(1)};
      Vec3 m = cross(normalized, lineTriple.coords);
      for (int i = 0; i < 3; ++i) entry.momentVector[i] += w * m[i];
    }
    entry.balanced = entry.combinatorialSum == 0 && is_zero(entry.momentVector);
    report.balanced = report.balanced && entry.balanced;
    report.perLine.push_back(std::move(entry));
  }

  for (const auto& p : config.structure.points) {
    BalanceEntry entry;
    entry.entityId = p;
    entry.combinatorialSum = 0;
    entry.momentVector = Vec3{Rational(0), Rational(0), Rational(0)};
    const auto& pointTriple = config.point_at(p);
    for (const auto& l : config.structure.lines_through(p)) {
      const auto& lineTriple = config.line_at(l);
      Rational w = stress.at(p, l);
      if (!lineTriple.chart_valid()) {
        entry.excluded.push_back(l);
        continue;
      }
      auto [a, b] = lineTriple.affine();
      entry.combinatorialSum += w;
      Vec3 normalized{a, b, Rational(1)};
      Vec3 m = cross(normalized, pointTriple.coords);
      for (int i = 0; i < 3; ++i) entry.momentVector[i] += w * m[i];
    }
    entry.balanced = entry.combinatorialSum == 0 && is_zero(entry.momentVector);
    report.balanced = report.balanced && entry.balanced;
    report.perPoint.push_back(std::move(entry));
  }
  return report;
}

SecondOrderResult second_order_extension_test(const Configuration& config,
                                              const PinningSystem& pins,
                                              const FlexVector& v) {
  RigidityMatrix m = assemble(config, pins);
  std::vector<Rational> column = to_column_vector(v, m.layout);
  for (const auto& residual : m.entries.apply(column)) {
    if (residual != 0) {
      throw ValidationError("velocity is not a first-order flex of the pinned configuration");
    }
  }

  auto velocity = [](const auto& table, const std::string& id) {
    auto it = table.find(id);
    return it == table.end() ? std::pair<Rational, Rational>{Rational(0), Rational(0)}
                             : it->second;
  };
  std::vector<Rational> rhs(m.entries.rows(), Rational(0));
  for (std::size_t r = 0; r < m.incidenceRows; ++r) {
    const auto& label = m.rowLabels[r];
    auto dp = velocity(v.pointVelocity, label.pointId);
    auto dl = velocity(v.lineVelocity, label.lineId);
    rhs[r] = Rational(-2) * (dp.first * dl.first + dp.second * dl.second);
  }

  SecondOrderResult result;
  auto solved = m.entries.solve(rhs);
  result.extendable = solved.consistent;
  if (solved.consistent) {
    result.acceleration = from_column_vector(solved.solution, m.layout);
  } else {
    result.obstructionRow = solved.inconsistentRow;
  }
  return result;
}

SecondOrderSummary second_order_rigidity_verdict(const Configuration& config,
                                                 const PinningSystem& pins) {
  SecondOrderSummary summary;
  RigidityMatrix m = assemble(config, pins);
  auto kernel = m.entries.kernel_basis();
  summary.pinnedNullity = kernel.size();
  if (kernel.empty()) {
    summary.verdict = SecondOrderVerdict::Rigid;
    summary.vacuous = true;
    return summary;
  }
  if (kernel.size() > 1) {
    summary.verdict = SecondOrderVerdict::Undecided;
    return summary;
  }
  FlexVector generator = from_column_vector(kernel.front(), m.layout);
  summary.generatorTest = second_order_extension_test(config, pins, generator);
  summary.verdict = summary.generatorTest->extendable ? SecondOrderVerdict::Flexible
                                                      : SecondOrderVerdict::Rigid;
  return summary;
}

RealizationComparison compare_realizations(const Configuration& a, const Configuration& b,
                                           const PinningSystem& sharedPins) {
  if (a.structure != b.structure) {
    throw ValidationError("realizations have different incidence structures");
  }
  sharedPins.validate_against(a.structure);
  for (const auto& id : sharedPins.points) {
    if (a.point_at(id) != b.point_at(id)) {
      throw ValidationError("pinned point '" + id + "' differs between realizations");
    }
  }
  for (const auto& id : sharedPins.lines) {
    if (a.line_at(id) != b.line_at(id)) {
      throw ValidationError("pinned line '" + id + "' differs between realizations");
    }
  }
  for (const auto& [id, triple] : a.coords) {
    if (!(b.coords.at(id) == triple)) {
      return RealizationComparison::Distinct;
    }
  }
  return RealizationComparison::ProjectivelyEquivalent;
}

std::string to_string(SecondOrderVerdict verdict) {
  switch (verdict) {
    case SecondOrderVerdict::Rigid: return "second-order-rigid";
    case SecondOrderVerdict::Flexible: return "second-order-flexible";
    case SecondOrderVerdict::Undecided: return "undecided";
  }
  return {};
}

std::string to_string(RealizationComparison comparison) {
  return comparison == RealizationComparison::ProjectivelyEquivalent
             ? "projectively-equivalent"
             : "distinct";
}

std::size_t conic_condition_rank(const std::vector<HomogeneousTriple>& points) {
  ExactMatrix m(0, 6);
  for (const auto& p : points) {
    if (p.kind != EntityKind::Point) {
      throw GeometryError("conic condition expects points, got line " + to_string(p));
    }
    const Rational& x = p.coords[0];
    const Rational& y = p.coords[1];
    const Rational& z = p.coords[2];
    Rational xx = x * x, xy = x * y, yy = y * y;
    Rational xz = x * z, yz = y * z, zz = z * z;
    m.append_row({xx, xy, yy, xz, yz, zz});
  }
  return m.rank();
}

}  // namespace projrig
