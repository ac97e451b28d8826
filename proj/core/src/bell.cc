#include "causalnet/bell.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "causalnet/errors.h"
#include "causalnet/independence.h"
#include "causalnet/separation.h"
#include "causalnet/simplex.h"

namespace causalnet {

Dag BellDag(int lambda_cardinality) {
  return Dag::Build(
      {
          {"X", NodeKind::kSetting, 2},
          {"Y", NodeKind::kSetting, 2},
          {"A", NodeKind::kOutcome, 2},
          {"B", NodeKind::kOutcome, 2},
          {std::string(kLambdaName), NodeKind::kLatent, lambda_cardinality},
      },
      {
          {"X", "A"},
          {std::string(kLambdaName), "A"},
          {std::string(kLambdaName), "B"},
          {"Y", "B"},
      });
}

// ---------------------------------------------------------------------------
// Behavior

Behavior::Behavior(const std::array<double, 16>& table) : table_(table) {
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      double sum = 0.0;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double p = table_[Index(a, b, x, y)];
          if (!(p >= 0.0) || !std::isfinite(p)) {
            throw DistributionError(
                "behavior has a negative or non-finite entry");
          }
          sum += p;
        }
      }
      if (std::abs(sum - 1.0) > kNormalizationTolerance) {
        throw DistributionError(
            fmt::format("behavior slice x={} y={} sums to {}", x, y, sum));
      }
    }
  }
}

Behavior Behavior::Uniform() {
  std::array<double, 16> t;
  t.fill(0.25);
  return Behavior(t);
}

double Behavior::Correlator(int x, int y) const {
  double e = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      e += ((a ^ b) ? -1.0 : 1.0) * (*this)(a, b, x, y);
    }
  }
  return e;
}

double Behavior::MarginalA(int a, int x, int y) const {
  return (*this)(a, 0, x, y) + (*this)(a, 1, x, y);
}

double Behavior::MarginalB(int b, int x, int y) const {
  return (*this)(0, b, x, y) + (*this)(1, b, x, y);
}

// ---------------------------------------------------------------------------
// Local models

void LhvModel::Validate() const {
  const std::size_t n = lambda_weights.size();
  if (n == 0 || response_a.size() != n || response_b.size() != n) {
    throw DistributionError("LHV model tables have inconsistent sizes");
  }
  auto check = [](std::span<const double> v, const char* what) {
    double sum = 0.0;
    for (double p : v) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw DistributionError(std::string(what) + " has a negative entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      throw DistributionError(std::string(what) + " does not sum to 1");
    }
  };
  check(lambda_weights, "hidden-variable distribution");
  for (std::size_t l = 0; l < n; ++l) {
    for (int s = 0; s < 2; ++s) {
      check(response_a[l][s], "Alice's response");
      check(response_b[l][s], "Bob's response");
    }
  }
}

std::array<LocalStrategy, 16> LocalStrategies() {
  std::array<LocalStrategy, 16> out;
  for (int f = 0; f < 4; ++f) {
    for (int g = 0; g < 4; ++g) out[f * 4 + g] = {f, g};
  }
  return out;
}

namespace {

std::array<std::array<double, 2>, 2> DeterministicResponse(int fn) {
  std::array<std::array<double, 2>, 2> r{};
  for (int s = 0; s < 2; ++s) r[s][(fn >> s) & 1] = 1.0;
  return r;
}

}  // namespace

std::vector<LhvModel> DeterministicStrategies() {
  std::vector<LhvModel> out;
  for (const LocalStrategy& s : LocalStrategies()) {
    out.push_back(
        {{1.0}, {DeterministicResponse(s.f)}, {DeterministicResponse(s.g)}});
  }
  return out;
}

LhvModel StrategyMixture(const std::array<double, 16>& weights) {
  LhvModel m;
  for (const LocalStrategy& s : LocalStrategies()) {
    m.response_a.push_back(DeterministicResponse(s.f));
    m.response_b.push_back(DeterministicResponse(s.g));
  }
  m.lambda_weights.assign(weights.begin(), weights.end());
  m.Validate();
  return m;
}

Behavior BehaviorFromLhv(const LhvModel& model) {
  model.Validate();
  std::array<double, 16> t{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          double p = 0.0;
          for (int l = 0; l < model.num_lambda(); ++l) {
            p += model.lambda_weights[l] * model.response_a[l][x][a] *
                 model.response_b[l][y][b];
          }
          t[Behavior::Index(a, b, x, y)] = p;
        }
      }
    }
  }
  return Behavior(t);
}

// ---------------------------------------------------------------------------
// CHSH

std::array<int, 4> ChshSigns(int variant) {
  if (variant < 0 || variant > 7) {
    throw QueryError("CHSH variant must be in 0..7");
  }
  std::array<int, 4> s = {1, 1, 1, 1};
  s[3 - (variant % 4)] = -1;
  if (variant >= 4) {
    for (int& v : s) v = -v;
  }
  return s;
}

double ChshValue(const Behavior& behavior, int variant) {
  const auto s = ChshSigns(variant);
  return s[0] * behavior.Correlator(0, 0) + s[1] * behavior.Correlator(0, 1) +
         s[2] * behavior.Correlator(1, 0) + s[3] * behavior.Correlator(1, 1);
}

int ChshValue(const LocalStrategy& strategy, int variant) {
  const auto s = ChshSigns(variant);
  int total = 0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const int e = (strategy.a(x) ^ strategy.b(y)) ? -1 : 1;
      total += s[x * 2 + y] * e;
    }
  }
  return total;
}

Behavior SingletBehavior(double theta0, double theta1, double phi0,
                         double phi1) {
  const double theta[2] = {theta0, theta1};
  const double phi[2] = {phi0, phi1};
  std::array<double, 16> t{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double e = -std::cos(theta[x] - phi[y]);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          t[Behavior::Index(a, b, x, y)] =
              0.25 * (1.0 + ((a ^ b) ? -e : e));
        }
      }
    }
  }
  return Behavior(t);
}

Behavior PrBox(int alpha, int beta, int gamma) {
  std::array<double, 16> t{};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const int parity = (x & y) ^ (alpha & x) ^ (beta & y) ^ (gamma & 1);
      for (int a = 0; a < 2; ++a) {
        t[Behavior::Index(a, a ^ parity, x, y)] = 0.5;
      }
    }
  }
  return Behavior(t);
}

// ---------------------------------------------------------------------------
// Audits

AuditReport NoSignallingCheck(const Behavior& behavior, double eps) {
  if (!(eps > 0.0)) throw QueryError("tolerance must be positive");
  AuditReport report;
  report.title = "no-signalling";
  {
    AuditEntry e;
    e.label = "P(a|x,y) independent of y";
    for (int x = 0; x < 2; ++x) {
      for (int a = 0; a < 2; ++a) {
        const double d = std::abs(behavior.MarginalA(a, x, 0) -
                                  behavior.MarginalA(a, x, 1));
        if (d > e.deviation) {
          e.deviation = d;
          e.witness = fmt::format("a={} x={}", a, x);
        }
      }
    }
    e.pass = e.deviation <= eps;
    if (e.pass) e.witness.clear();
    report.entries.push_back(std::move(e));
  }
  {
    AuditEntry e;
    e.label = "P(b|x,y) independent of x";
    for (int y = 0; y < 2; ++y) {
      for (int b = 0; b < 2; ++b) {
        const double d = std::abs(behavior.MarginalB(b, 0, y) -
                                  behavior.MarginalB(b, 1, y));
        if (d > e.deviation) {
          e.deviation = d;
          e.witness = fmt::format("b={} y={}", b, y);
        }
      }
    }
    e.pass = e.deviation <= eps;
    if (e.pass) e.witness.clear();
    report.entries.push_back(std::move(e));
  }
  return report;
}

MembershipVerdict LhvMembership(const Behavior& behavior, double eps) {
  if (!(eps > 0.0)) throw QueryError("tolerance must be positive");
  const AuditReport ns = NoSignallingCheck(behavior, eps);
  if (!ns.pass()) {
    throw QueryError("behavior is signalling (deviation " +
                     FormatReal(ns.worst_deviation()) +
                     "); membership is posed inside the no-signalling set");
  }

  MembershipVerdict verdict;
  verdict.max_chsh = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < 8; ++v) {
    const double s = ChshValue(behavior, v);
    if (s > verdict.max_chsh) {
      verdict.max_chsh = s;
      verdict.max_chsh_variant = v;
    }
  }
  const bool facet_violated = verdict.max_chsh > 2.0 + eps;

  // Columns are the 16 local strategies; rows the 16 behavior entries plus
  // normalization of the weights.
  const auto strategies = LocalStrategies();
  DenseMatrix a(17, 16);
  std::vector<double> rhs(17);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int oa = 0; oa < 2; ++oa) {
        for (int ob = 0; ob < 2; ++ob) {
          const int row = static_cast<int>(Behavior::Index(oa, ob, x, y));
          for (int k = 0; k < 16; ++k) {
            const auto& s = strategies[k];
            a(row, k) = (s.a(x) == oa && s.b(y) == ob) ? 1.0 : 0.0;
          }
          rhs[row] = behavior(oa, ob, x, y);
        }
      }
    }
  }
  for (int k = 0; k < 16; ++k) a(16, k) = 1.0;
  rhs[16] = 1.0;

  const L1FitResult fit = FitNonnegativeL1(a, rhs);
  std::array<double, 16> weights{};
  double total = 0.0;
  for (int k = 0; k < 16; ++k) total += fit.x[k];
  if (total > 0.0) {
    for (int k = 0; k < 16; ++k) weights[k] = fit.x[k] / total;
  }
  double error = 0.0;
  std::optional<LhvModel> model;
  if (total > 0.0) {
    model = StrategyMixture(weights);
    const Behavior rebuilt = BehaviorFromLhv(*model);
    for (std::size_t i = 0; i < 16; ++i) {
      error = std::max(error,
                       std::abs(rebuilt.table()[i] - behavior.table()[i]));
    }
  } else {
    error = std::numeric_limits<double>::infinity();
  }
  const bool fit_feasible = error <= eps;

  if (fit_feasible == facet_violated) {
    throw InternalError(fmt::format(
        "membership routes disagree: fit error {} vs max CHSH {} (variant {})",
        error, verdict.max_chsh, verdict.max_chsh_variant));
  }
  verdict.local = fit_feasible;
  if (verdict.local) {
    verdict.model = std::move(model);
    verdict.reconstruction_error = error;
  } else {
    verdict.violated =
        FacetViolation{verdict.max_chsh_variant, verdict.max_chsh};
  }
  return verdict;
}

JointTable JointFromLhv(const LhvModel& model) {
  model.Validate();
  const Dag dag = BellDag(model.num_lambda());
  std::vector<ConditionalTable> tables;
  tables.push_back({{"X", 2}, {}, {0.5, 0.5}});
  tables.push_back({{"Y", 2}, {}, {0.5, 0.5}});
  ConditionalTable ta{{"A", 2}, {{"X", 2}, {std::string(kLambdaName), model.num_lambda()}}, {}};
  ConditionalTable tb{{"B", 2}, {{"Y", 2}, {std::string(kLambdaName), model.num_lambda()}}, {}};
  for (int s = 0; s < 2; ++s) {
    for (int l = 0; l < model.num_lambda(); ++l) {
      ta.entries.push_back(model.response_a[l][s][0]);
      ta.entries.push_back(model.response_a[l][s][1]);
      tb.entries.push_back(model.response_b[l][s][0]);
      tb.entries.push_back(model.response_b[l][s][1]);
    }
  }
  tables.push_back(std::move(ta));
  tables.push_back(std::move(tb));
  tables.push_back({{std::string(kLambdaName), model.num_lambda()},
                    {},
                    model.lambda_weights});
  return JointFromTables(dag, tables);
}

JointTable BehaviorJoint(const Behavior& behavior) {
  std::vector<Variable> vars = {{"X", 2}, {"Y", 2}, {"A", 2}, {"B", 2}};
  std::vector<double> probs(16);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          probs[((x * 2 + y) * 2 + a) * 2 + b] = 0.25 * behavior(a, b, x, y);
        }
      }
    }
  }
  return JointTable(std::move(vars), std::move(probs));
}

AuditReport ScreeningAudit(const JointTable& joint, double eps) {
  struct Reduction {
    const char* label;
    std::vector<std::string> x, y, z;
  };
  const std::string l(kLambdaName);
  const std::vector<Reduction> reductions = {
      {"P(a|b,x,y,l) = P(a|x,l)", {"A"}, {"B", "Y"}, {"X", l}},
      {"P(b|x,y,l) = P(b|y,l)", {"B"}, {"X"}, {"Y", l}},
      {"P(l|x,y) = P(l)", {l}, {"X", "Y"}, {}},
      {"P(x|y) = P(x)", {"X"}, {"Y"}, {}},
  };
  AuditReport report;
  report.title = "screening reductions on the Bell joint";
  for (const auto& r : reductions) {
    const CiReport ci =
        CiHolds(joint, MakeVariableQuery(joint, r.x, r.y, r.z), eps);
    report.entries.push_back({r.label, ci.holds, ci.max_violation,
                              FormatWitness(ci), true,
                              FormatQuery(joint, ci.query)});
  }
  return report;
}

AuditReport QuantumCausalityAudit(const Behavior& behavior, double eps) {
  const Dag dag = BellDag();
  const JointTable joint = BehaviorJoint(behavior);
  const NodeSet observed =
      dag.AllNodes().Minus(dag.NodesOfKind(NodeKind::kLatent));
  AuditReport report;
  report.title =
      "quantum causality condition (uniform setting priors, empty "
      "conditioning set)";
  for (auto i = observed.begin(); i != observed.end(); ++i) {
    for (auto j = std::next(i); j != observed.end(); ++j) {
      NodeId u = *i;
      NodeId v = *j;
      // Outcome first in labels.
      if (dag.kind(u) == NodeKind::kSetting &&
          dag.kind(v) == NodeKind::kOutcome) {
        std::swap(u, v);
      }
      const bool demanded =
          QSeparated(dag, {NodeSet{u}, NodeSet{v}, NodeSet{}}).separated;
      const CiReport ci = CiHolds(
          joint, MakeVariableQuery(joint, {dag.name(u)}, {dag.name(v)}, {}),
          eps);
      AuditEntry e{FormatQuery(joint, ci.query), ci.holds, ci.max_violation,
                   FormatWitness(ci), demanded, ""};
      if (!demanded) {
        if (dag.HasDirectedPath(u, v) || dag.HasDirectedPath(v, u)) {
          e.note = "exempt: cause and effect";
        } else {
          const NodeSet common =
              dag.Ancestors(u).Intersection(dag.Ancestors(v));
          std::string names;
          for (NodeId c : common) names += (names.empty() ? "" : ",") + dag.name(c);
          e.note = "exempt: common cause " + names;
        }
      }
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

LhvModel RandomLhvModel(std::uint64_t seed, int lambda_cardinality) {
  if (lambda_cardinality < 1) {
    throw QueryError("hidden variable needs at least one value");
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> unit_exp(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LhvModel m;
  double sum = 0.0;
  for (int l = 0; l < lambda_cardinality; ++l) {
    m.lambda_weights.push_back(unit_exp(rng));
    sum += m.lambda_weights.back();
  }
  for (double& w : m.lambda_weights) w /= sum;
  for (int l = 0; l < lambda_cardinality; ++l) {
    std::array<std::array<double, 2>, 2> ra, rb;
    for (int s = 0; s < 2; ++s) {
      const double pa = unit(rng);
      const double pb = unit(rng);
      ra[s] = {pa, 1.0 - pa};
      rb[s] = {pb, 1.0 - pb};
    }
    m.response_a.push_back(ra);
    m.response_b.push_back(rb);
  }
  return m;
}

std::string FormatMembership(const MembershipVerdict& verdict) {
  if (!verdict.local) {
    return fmt::format("not local: variant {}, S = {}\n",
                       verdict.violated->variant,
                       FormatReal(verdict.violated->value));
  }
  std::string out =
      fmt::format("local: max CHSH = {} (variant {}), reconstruction error = "
                  "{}\n",
                  FormatReal(verdict.max_chsh), verdict.max_chsh_variant,
                  FormatReal(verdict.reconstruction_error));
  const auto strategies = LocalStrategies();
  for (int k = 0; k < verdict.model->num_lambda(); ++k) {
    const auto& s = strategies[k];
    out += fmt::format("lambda {:>2}  a(0)={} a(1)={} b(0)={} b(1)={}  "
                       "weight {}\n",
                       k, s.a(0), s.a(1), s.b(0), s.b(1),
                       FormatReal(verdict.model->lambda_weights[k]));
  }
  return out;
}

std::string FormatMembershipCsv(const MembershipVerdict& verdict) {
  std::string out = "local,variant,value";
  for (int k = 0; k < 16; ++k) out += fmt::format(",w{}", k);
  out += "\n";
  if (!verdict.local) {
    out += fmt::format("0,{},{}", verdict.violated->variant,
                       FormatReal(verdict.violated->value));
    for (int k = 0; k < 16; ++k) out += ",";
  } else {
    out += fmt::format("1,{},{}", verdict.max_chsh_variant,
                       FormatReal(verdict.max_chsh));
    for (double w : verdict.model->lambda_weights) out += "," + FormatReal(w);
  }
  return out + "\n";
}

}  // namespace causalnet
