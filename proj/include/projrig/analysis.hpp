#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projrig/rigidity.hpp"

namespace projrig {

// Independence refers to the incidence rows, the motion label to the kernel
// beyond the eight trivial motions.
struct AnalysisReport {
  std::size_t pointCount = 0;
  std::size_t lineCount = 0;
  std::size_t incidenceCount = 0;
  long long dofBudget = 0;  // 2|P| + 2|L| - 8
  std::string arithmeticMode;  // "exact-rational", "numeric-double" or "counting"

  std::optional<std::size_t> rank;
  std::optional<std::size_t> nullity;
  std::optional<std::size_t> trivialSpanDim;
  std::optional<std::size_t> nontrivialFlexDim;
  std::optional<std::size_t> stressDim;
  std::optional<std::size_t> pinnedRank;
  std::optional<std::size_t> pinnedNullity;

  bool dependent = false;
  std::string independenceLabel;  // "independent" or "dependent"
  std::string motionLabel;        // "isostatic", "flexible" or "overbraced"
};

// Full exact analysis; requires a chart-valid configuration. When pins are
// given, the pinned rank/nullity are reported alongside the unpinned ones.
AnalysisReport analyze(const Configuration& config, const PinningSystem& pins = {});

// Counting-only analysis from the entity and incidence counts: more
// incidences than the degree-of-freedom budget force dependence without any
// coordinates.
AnalysisReport analyze_counts(std::size_t points, std::size_t lines, std::size_t incidences);

// Whether declaring one more (geometrically valid, undeclared) incidence
// increases the rank. Dependent additions create a self-stress.
struct AddedIncidenceResult {
  bool independent = false;
  std::size_t rankBefore = 0;
  std::size_t rankAfter = 0;
};
AddedIncidenceResult test_added_incidence(const Configuration& config,
                                          const std::string& pointId,
                                          const std::string& lineId);

// All exactly incident (point, line) pairs in the realization, declared or
// not, in declaration order.
std::vector<std::pair<std::string, std::string>> detect_geometric_incidences(
    const Configuration& config);

// Exact balance checks satisfied by self-stresses and only by them. Per
// line: the coefficients over incident finite points sum to zero and the
// weighted cross products sum to the zero vector; dually per point over
// incident chart-valid lines.
struct BalanceEntry {
  std::string entityId;
  Rational combinatorialSum;
  Vec3 momentVector;
  std::vector<std::string> excluded;  // ideal points / origin lines skipped by the sums
  bool balanced = false;
};

struct BalanceReport {
  std::vector<BalanceEntry> perLine;
  std::vector<BalanceEntry> perPoint;
  bool balanced = false;
};

BalanceReport verify_three_fold_balance(const Configuration& config, const StressVector& stress);

// Second-order test for a first-order flex v of the pinned configuration:
// is there an acceleration solving M a = r with r = -2 (dp . dl) per
// incidence row (zero on pin rows)?
struct SecondOrderResult {
  bool extendable = false;
  std::optional<FlexVector> acceleration;
  std::optional<std::size_t> obstructionRow;  // echelon row giving 0 = nonzero
};

SecondOrderResult second_order_extension_test(const Configuration& config,
                                              const PinningSystem& pins, const FlexVector& v);

enum class SecondOrderVerdict { Rigid, Flexible, Undecided };

struct SecondOrderSummary {
  SecondOrderVerdict verdict = SecondOrderVerdict::Undecided;
  std::size_t pinnedNullity = 0;
  bool vacuous = false;  // pinned nullity zero: nothing to extend
  std::optional<SecondOrderResult> generatorTest;
};

// Pinned nullity 0: rigid (vacuously). Nullity 1: run the extension test on
// the kernel generator. Nullity >= 2: undecided.
SecondOrderSummary second_order_rigidity_verdict(const Configuration& config,
                                                 const PinningSystem& pins);

enum class RealizationComparison { ProjectivelyEquivalent, Distinct };

// Requires both realizations to share the incidence structure and the exact
// coordinates of the shared pins; reports whether any unpinned entity
// differs projectively.
RealizationComparison compare_realizations(const Configuration& a, const Configuration& b,
                                           const PinningSystem& sharedPins);

std::string to_string(SecondOrderVerdict verdict);
std::string to_string(RealizationComparison comparison);

// Exact rank of the conic-condition matrix with one row
// [x^2, xy, y^2, xz, yz, z^2] per point. Rank < 6 means some conic passes
// through all of them; rank 5 pins that conic down uniquely.
std::size_t conic_condition_rank(const std::vector<HomogeneousTriple>& points);

}  // namespace projrig
