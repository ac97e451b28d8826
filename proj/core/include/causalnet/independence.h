#ifndef CAUSALNET_INDEPENDENCE_H_
#define CAUSALNET_INDEPENDENCE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causalnet/audit.h"
#include "causalnet/dag.h"
#include "causalnet/distribution.h"
#include "causalnet/separation.h"

namespace causalnet {

inline constexpr double kDefaultEpsilon = 1e-9;

// (X ⫫ Y | Z) over variable indices of a JointTable.
struct VariableQuery {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;
};

VariableQuery MakeVariableQuery(const JointTable& p,
                                const std::vector<std::string>& x,
                                const std::vector<std::string>& y,
                                const std::vector<std::string>& z);
// Maps a graph query onto the table by node name.
VariableQuery MakeVariableQuery(const JointTable& p, const Dag& dag,
                                const CondQuery& query);

std::string FormatQuery(const JointTable& p, const VariableQuery& q);

struct CiReport {
  VariableQuery query;
  bool holds = true;
  // max over assignments of |P(x,y,z)P(z) - P(x,z)P(y,z)|
  double max_violation = 0.0;
  // (name, value) pairs for the worst assignment, set when !holds.
  std::optional<std::vector<std::pair<std::string, int>>> witness;
};

std::string FormatWitness(const CiReport& report);

// Throws QueryError on overlapping or empty X/Y sets, or eps <= 0.
CiReport CiHolds(const JointTable& p, const VariableQuery& q, double eps);

// Local Markov property: v ⫫ nondescendants \ parents | parents, per node.
// Throws QueryError when the table's variables differ from the graph's.
AuditReport Compatible(const JointTable& p, const Dag& dag, double eps);
AuditReport CausalMarkovCheck(const JointTable& p, const Dag& dag,
                              double eps);
// v ⫫ nondescendants \ ancestors | ancestors, per node.
AuditReport CausalCompletenessCheck(const JointTable& p, const Dag& dag,
                                    double eps);

enum class RpccVerdict {
  kUncorrelated,
  kScreenedByCommonPast,
  kViolatesRpcc,
  kDirectCauseRelation,
};

std::string_view RpccVerdictName(RpccVerdict v);

struct RpccReport {
  RpccVerdict verdict = RpccVerdict::kUncorrelated;
  NodeSet common_past;  // ancestors(x) ∩ ancestors(y)
  std::optional<CiReport> marginal;
  std::optional<CiReport> screened;
};

RpccReport ReichenbachCheck(const JointTable& p, const Dag& dag, NodeId x,
                            NodeId y, double eps);

}  // namespace causalnet

#endif  // CAUSALNET_INDEPENDENCE_H_
