#include "causalnet/graphoid.h"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "causalnet/errors.h"
#include "causalnet/independence.h"

namespace causalnet {

std::string_view AxiomName(GraphoidAxiom axiom) {
  switch (axiom) {
    case GraphoidAxiom::kSymmetry:
      return "symmetry";
    case GraphoidAxiom::kDecomposition:
      return "decomposition";
    case GraphoidAxiom::kWeakUnion:
      return "weak_union";
    case GraphoidAxiom::kContraction:
      return "contraction";
    case GraphoidAxiom::kIntersection:
      return "intersection";
  }
  return "symmetry";
}

namespace {

std::vector<int> Cat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool Holds(const JointTable& p, const std::vector<int>& x,
           const std::vector<int>& y, const std::vector<int>& z, double eps) {
  return CiHolds(p, {x, y, z}, eps).holds;
}

std::string Describe(const JointTable& p, const AxiomInstance& in) {
  auto names = [&](const std::vector<int>& idx) {
    std::string s;
    for (int i : idx) s += (s.empty() ? "" : ",") + p.variables()[i].name;
    return "{" + s + "}";
  };
  return "X=" + names(in.x) + " Y=" + names(in.y) + " Z=" + names(in.z) +
         " W=" + names(in.w);
}

}  // namespace

AxiomCheck CheckAxiom(const JointTable& p, GraphoidAxiom axiom,
                      const AxiomInstance& in, double eps) {
  const auto& [x, y, z, w] = in;
  if (axiom != GraphoidAxiom::kSymmetry && w.empty()) {
    throw QueryError("axiom instance needs a nonempty W");
  }
  const std::vector<int> yw = Cat(y, w);
  bool antecedent = false;
  VariableQuery consequent;
  switch (axiom) {
    case GraphoidAxiom::kSymmetry:
      antecedent = Holds(p, x, y, z, eps);
      consequent = {y, x, z};
      break;
    case GraphoidAxiom::kDecomposition:
      antecedent = Holds(p, x, yw, z, eps);
      consequent = {x, y, z};
      break;
    case GraphoidAxiom::kWeakUnion:
      antecedent = Holds(p, x, yw, z, eps);
      consequent = {x, y, Cat(z, w)};
      break;
    case GraphoidAxiom::kContraction:
      antecedent = Holds(p, x, y, Cat(z, w), eps) && Holds(p, x, w, z, eps);
      consequent = {x, yw, z};
      break;
    case GraphoidAxiom::kIntersection:
      antecedent =
          Holds(p, x, w, Cat(z, y), eps) && Holds(p, x, y, Cat(z, w), eps);
      consequent = {x, yw, z};
      break;
  }
  AxiomCheck check;
  if (!antecedent) return check;
  const CiReport ci = CiHolds(p, consequent, 10.0 * eps);
  check.consequent_violation = ci.max_violation;
  if (ci.holds) {
    check.outcome = AxiomOutcome::kHolds;
  } else if (axiom == GraphoidAxiom::kIntersection && !p.StrictlyPositive()) {
    check.outcome = AxiomOutcome::kExcludedByPositivity;
  } else {
    check.outcome = AxiomOutcome::kFails;
  }
  return check;
}

bool GraphoidReport::pass() const {
  return std::all_of(stats.begin(), stats.end(),
                     [](const AxiomStats& s) { return s.failures == 0; });
}

AuditReport GraphoidReport::ToAudit() const {
  AuditReport report;
  report.title = std::string("graphoid axioms (") +
                 (strictly_positive ? "strictly positive"
                                    : "has zero entries") +
                 ")";
  for (GraphoidAxiom a : kAllAxioms) {
    const AxiomStats& s = of(a);
    AuditEntry e;
    e.label = std::string(AxiomName(a));
    e.pass = s.failures == 0;
    e.witness = s.counterexample.value_or("");
    e.note = fmt::format("sampled={} antecedent_held={} consequent_held={}",
                         s.sampled, s.antecedent_held, s.consequent_held);
    if (s.excluded_by_positivity > 0) {
      e.note += fmt::format(" excluded_by_positivity_gate={}",
                            s.excluded_by_positivity);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

GraphoidReport GraphoidAudit(const JointTable& p, double eps, int trials,
                             std::uint64_t seed) {
  if (trials <= 0) throw QueryError("trials must be positive");
  if (!(eps > 0.0)) throw QueryError("tolerance must be positive");
  GraphoidReport report;
  report.strictly_positive = p.StrictlyPositive();
  const int n = p.num_variables();
  if (n < 2) return report;
  const bool with_w = n >= 3;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> bucket(0, with_w ? 4 : 2);
  for (int t = 0; t < trials; ++t) {
    AxiomInstance in;
    do {
      in = {};
      for (int v = 0; v < n; ++v) {
        switch (bucket(rng)) {
          case 0: in.x.push_back(v); break;
          case 1: in.y.push_back(v); break;
          case 2: in.z.push_back(v); break;
          case 3: in.w.push_back(v); break;
          default: break;
        }
      }
    } while (in.x.empty() || in.y.empty() || (with_w && in.w.empty()));

    for (GraphoidAxiom a : kAllAxioms) {
      if (!with_w && a != GraphoidAxiom::kSymmetry) continue;
      AxiomStats& s = report.stats[static_cast<int>(a)];
      ++s.sampled;
      const AxiomCheck c = CheckAxiom(p, a, in, eps);
      switch (c.outcome) {
        case AxiomOutcome::kAntecedentFails:
          break;
        case AxiomOutcome::kHolds:
          ++s.antecedent_held;
          ++s.consequent_held;
          break;
        case AxiomOutcome::kFails:
          ++s.antecedent_held;
          ++s.failures;
          if (!s.counterexample) {
            s.counterexample = Describe(p, in) + " violation=" +
                               FormatReal(c.consequent_violation);
          }
          break;
        case AxiomOutcome::kExcludedByPositivity:
          ++s.antecedent_held;
          ++s.excluded_by_positivity;
          break;
      }
    }
  }
  return report;
}

std::string FormatGraphoidTable(const GraphoidReport& report) {
  std::string out = fmt::format(
      "distribution: {}\n{:<14}  {:>8}  {:>10}  {:>10}  {:>8}  {:>8}  {}\n",
      report.strictly_positive ? "strictly positive" : "has zero entries",
      "axiom", "sampled", "antecedent", "consequent", "failures", "excluded",
      "status");
  for (GraphoidAxiom a : kAllAxioms) {
    const AxiomStats& s = report.of(a);
    std::string status = s.failures == 0 ? "pass" : "FAIL";
    if (s.excluded_by_positivity > 0) status += " (positivity gate)";
    out += fmt::format("{:<14}  {:>8}  {:>10}  {:>10}  {:>8}  {:>8}  {}\n",
                       AxiomName(a), s.sampled, s.antecedent_held,
                       s.consequent_held, s.failures,
                       s.excluded_by_positivity, status);
    if (s.counterexample) out += "  counterexample: " + *s.counterexample + "\n";
  }
  out += std::string("overall: ") + (report.pass() ? "pass" : "FAIL") + "\n";
  return out;
}

}  // namespace causalnet
