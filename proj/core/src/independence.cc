#include "causalnet/independence.h"

#include <cmath>
#include <set>

#include "causalnet/errors.h"

namespace causalnet {

namespace {

std::vector<int> IndicesOf(const JointTable& p,
                           const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(p.Index(n));
  return out;
}

std::vector<int> IndicesOf(const JointTable& p, const Dag& dag,
                           const NodeSet& set) {
  std::vector<int> out;
  for (NodeId id : set) out.push_back(p.Index(dag.name(id)));
  return out;
}

std::string JoinVariables(const JointTable& p, const std::vector<int>& idx) {
  std::string out;
  for (int i : idx) {
    if (!out.empty()) out += ",";
    out += p.variables()[i].name;
  }
  return out;
}

void CheckSameVariables(const JointTable& p, const Dag& dag) {
  if (p.num_variables() != dag.num_nodes()) {
    throw QueryError("distribution and graph have different variable sets");
  }
  for (const auto& n : dag.nodes()) {
    auto i = p.Find(n.name);
    if (!i) {
      throw QueryError("graph node '" + n.name +
                       "' is not a variable of the distribution");
    }
    if (p.variables()[*i].cardinality != n.cardinality) {
      throw QueryError("cardinality of '" + n.name +
                       "' differs between graph and distribution");
    }
  }
}

}  // namespace

VariableQuery MakeVariableQuery(const JointTable& p,
                                const std::vector<std::string>& x,
                                const std::vector<std::string>& y,
                                const std::vector<std::string>& z) {
  return {IndicesOf(p, x), IndicesOf(p, y), IndicesOf(p, z)};
}

VariableQuery MakeVariableQuery(const JointTable& p, const Dag& dag,
                                const CondQuery& query) {
  return {IndicesOf(p, dag, query.x), IndicesOf(p, dag, query.y),
          IndicesOf(p, dag, query.z)};
}

std::string FormatQuery(const JointTable& p, const VariableQuery& q) {
  return JoinVariables(p, q.x) + " _||_ " + JoinVariables(p, q.y) + " | {" +
         JoinVariables(p, q.z) + "}";
}

std::string FormatWitness(const CiReport& report) {
  if (!report.witness) return "";
  std::string out;
  for (const auto& [name, value] : *report.witness) {
    if (!out.empty()) out += " ";
    out += name + "=" + std::to_string(value);
  }
  return out;
}

CiReport CiHolds(const JointTable& p, const VariableQuery& q, double eps) {
  if (!(eps > 0.0)) throw QueryError("tolerance must be positive");
  if (q.x.empty() || q.y.empty()) {
    throw QueryError("query sets X and Y must be nonempty");
  }
  std::vector<int> order;
  order.insert(order.end(), q.z.begin(), q.z.end());
  order.insert(order.end(), q.x.begin(), q.x.end());
  order.insert(order.end(), q.y.begin(), q.y.end());
  std::set<int> distinct(order.begin(), order.end());
  if (distinct.size() != order.size()) {
    throw QueryError("query sets X, Y, Z must be pairwise disjoint");
  }
  const JointTable m = p.Marginal(order);

  auto block = [&](const std::vector<int>& idx) {
    std::size_t n = 1;
    for (int i : idx) n *= static_cast<std::size_t>(p.variables()[i].cardinality);
    return n;
  };
  const std::size_t nz = block(q.z), nx = block(q.x), ny = block(q.y);

  CiReport report{q, true, 0.0, std::nullopt};
  std::size_t worst = 0;
  std::vector<double> pxz(nx), pyz(ny);
  for (std::size_t zi = 0; zi < nz; ++zi) {
    const std::size_t base = zi * nx * ny;
    std::fill(pxz.begin(), pxz.end(), 0.0);
    std::fill(pyz.begin(), pyz.end(), 0.0);
    double pz = 0.0;
    for (std::size_t xi = 0; xi < nx; ++xi) {
      for (std::size_t yi = 0; yi < ny; ++yi) {
        const double v = m[base + xi * ny + yi];
        pxz[xi] += v;
        pyz[yi] += v;
        pz += v;
      }
    }
    for (std::size_t xi = 0; xi < nx; ++xi) {
      for (std::size_t yi = 0; yi < ny; ++yi) {
        const double dev =
            std::abs(m[base + xi * ny + yi] * pz - pxz[xi] * pyz[yi]);
        if (dev > report.max_violation) {
          report.max_violation = dev;
          worst = base + xi * ny + yi;
        }
      }
    }
  }
  report.holds = report.max_violation <= eps;
  if (!report.holds) {
    const std::vector<int> values = m.Assignment(worst);
    const std::size_t zc = q.z.size(), xc = q.x.size();
    std::vector<std::pair<std::string, int>> w;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      w.emplace_back(p.variables()[q.x[i]].name, values[zc + i]);
    }
    for (std::size_t i = 0; i < q.y.size(); ++i) {
      w.emplace_back(p.variables()[q.y[i]].name, values[zc + xc + i]);
    }
    for (std::size_t i = 0; i < q.z.size(); ++i) {
      w.emplace_back(p.variables()[q.z[i]].name, values[i]);
    }
    report.witness = std::move(w);
  }
  return report;
}

namespace {

// One entry per node: v _||_ (nondescendants \ given) | given.
template <typename GivenFn>
AuditReport LocalAudit(const JointTable& p, const Dag& dag, double eps,
                       std::string title, GivenFn&& given_for) {
  if (!(eps > 0.0)) throw QueryError("tolerance must be positive");
  CheckSameVariables(p, dag);
  AuditReport report;
  report.title = std::move(title);
  for (int i = 0; i < dag.num_nodes(); ++i) {
    const NodeId v{i};
    const NodeSet given = given_for(v);
    const NodeSet rest = dag.NonDescendants(v).Minus(given);
    AuditEntry entry;
    VariableQuery q{{p.Index(dag.name(v))}, IndicesOf(p, dag, rest),
                    IndicesOf(p, dag, given)};
    if (rest.empty()) {
      entry.label = dag.name(v) + " _||_ {} | {" + JoinVariables(p, q.z) + "}";
      entry.note = "vacuous";
    } else {
      const CiReport ci = CiHolds(p, q, eps);
      entry.label = FormatQuery(p, q);
      entry.pass = ci.holds;
      entry.deviation = ci.max_violation;
      entry.witness = FormatWitness(ci);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace

AuditReport Compatible(const JointTable& p, const Dag& dag, double eps) {
  return LocalAudit(p, dag, eps, "compatibility (local Markov property)",
                    [&](NodeId v) { return dag.Parents(v); });
}

AuditReport CausalMarkovCheck(const JointTable& p, const Dag& dag,
                              double eps) {
  return LocalAudit(
      p, dag, eps,
      "causal Markov condition: each node _||_ non-descendants | parents",
      [&](NodeId v) { return dag.Parents(v); });
}

AuditReport CausalCompletenessCheck(const JointTable& p, const Dag& dag,
                                    double eps) {
  return LocalAudit(
      p, dag, eps,
      "causal completeness: each node _||_ non-descendants | ancestors",
      [&](NodeId v) { return dag.Ancestors(v); });
}

std::string_view RpccVerdictName(RpccVerdict v) {
  switch (v) {
    case RpccVerdict::kUncorrelated:
      return "uncorrelated";
    case RpccVerdict::kScreenedByCommonPast:
      return "screened_by_common_past";
    case RpccVerdict::kViolatesRpcc:
      return "violates_rpcc";
    case RpccVerdict::kDirectCauseRelation:
      return "direct_cause_relation";
  }
  return "uncorrelated";
}

RpccReport ReichenbachCheck(const JointTable& p, const Dag& dag, NodeId x,
                            NodeId y, double eps) {
  CheckSameVariables(p, dag);
  if (x == y) throw QueryError("the two events must differ");
  RpccReport report;
  report.common_past = dag.Ancestors(x).Intersection(dag.Ancestors(y));
  if (dag.HasDirectedPath(x, y) || dag.HasDirectedPath(y, x)) {
    report.verdict = RpccVerdict::kDirectCauseRelation;
    return report;
  }
  const int xi = p.Index(dag.name(x));
  const int yi = p.Index(dag.name(y));
  report.marginal = CiHolds(p, {{xi}, {yi}, {}}, eps);
  if (report.marginal->holds) {
    report.verdict = RpccVerdict::kUncorrelated;
    return report;
  }
  report.screened =
      CiHolds(p, {{xi}, {yi}, IndicesOf(p, dag, report.common_past)}, eps);
  report.verdict = report.screened->holds ? RpccVerdict::kScreenedByCommonPast
                                          : RpccVerdict::kViolatesRpcc;
  return report;
}

}  // namespace causalnet
