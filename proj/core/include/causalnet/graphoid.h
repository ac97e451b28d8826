#ifndef CAUSALNET_GRAPHOID_H_
#define CAUSALNET_GRAPHOID_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalnet/audit.h"
#include "causalnet/distribution.h"

namespace causalnet {

enum class GraphoidAxiom {
  kSymmetry,
  kDecomposition,
  kWeakUnion,
  kContraction,
  kIntersection,
};

inline constexpr std::array<GraphoidAxiom, 5> kAllAxioms = {
    GraphoidAxiom::kSymmetry, GraphoidAxiom::kDecomposition,
    GraphoidAxiom::kWeakUnion, GraphoidAxiom::kContraction,
    GraphoidAxiom::kIntersection};

std::string_view AxiomName(GraphoidAxiom axiom);

// Disjoint variable index sets. X and Y are nonempty; W is nonempty for
// every axiom except Symmetry, which ignores it.
struct AxiomInstance {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;
  std::vector<int> w;
};

enum class AxiomOutcome {
  kAntecedentFails,
  kHolds,
  kFails,
  // Intersection antecedents held and its consequent failed on a table
  // with zero entries, where the rule is not valid.
  kExcludedByPositivity,
};

struct AxiomCheck {
  AxiomOutcome outcome = AxiomOutcome::kAntecedentFails;
  double consequent_violation = 0.0;
};

// Antecedents are tested at eps, the consequent at 10 * eps.
AxiomCheck CheckAxiom(const JointTable& p, GraphoidAxiom axiom,
                      const AxiomInstance& instance, double eps);

struct AxiomStats {
  int sampled = 0;
  int antecedent_held = 0;
  int consequent_held = 0;
  int failures = 0;
  int excluded_by_positivity = 0;
  std::optional<std::string> counterexample;
};

struct GraphoidReport {
  bool strictly_positive = false;
  std::array<AxiomStats, 5> stats;

  const AxiomStats& of(GraphoidAxiom a) const {
    return stats[static_cast<int>(a)];
  }
  bool pass() const;
  AuditReport ToAudit() const;
};

// Draws `trials` random instances (each variable lands in X, Y, Z, W or
// nowhere) and checks all five axioms on each. Tables with fewer than three
// variables only admit Symmetry instances.
GraphoidReport GraphoidAudit(const JointTable& p, double eps, int trials,
                             std::uint64_t seed);

std::string FormatGraphoidTable(const GraphoidReport& report);

}  // namespace causalnet

#endif  // CAUSALNET_GRAPHOID_H_
