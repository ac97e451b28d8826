#ifndef CAUSALNET_BELL_H_
#define CAUSALNET_BELL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causalnet/audit.h"
#include "causalnet/dag.h"
#include "causalnet/distribution.h"

namespace causalnet {

// Two parties, binary settings x, y and binary outcomes a, b.
//
// Node names used throughout: settings "X", "Y"; outcomes "A", "B"; the
// shared hidden variable "Lambda".
inline constexpr int kDefaultLambdaCardinality = 16;
inline constexpr std::string_view kLambdaName = "Lambda";

// X -> A <- Lambda -> B <- Y, declared in the order X, Y, A, B, Lambda.
Dag BellDag(int lambda_cardinality = kDefaultLambdaCardinality);

// Conditional table P(a,b|x,y).
class Behavior {
 public:
  static constexpr std::size_t Index(int a, int b, int x, int y) {
    return static_cast<std::size_t>(((x * 2 + y) * 2 + a) * 2 + b);
  }

  // Throws DistributionError unless every (x,y) slice is a probability
  // vector within kNormalizationTolerance.
  explicit Behavior(const std::array<double, 16>& table);

  double operator()(int a, int b, int x, int y) const {
    return table_[Index(a, b, x, y)];
  }
  const std::array<double, 16>& table() const { return table_; }

  // E(x,y) = sum_{a,b} (-1)^(a xor b) P(a,b|x,y).
  double Correlator(int x, int y) const;
  double MarginalA(int a, int x, int y) const;
  double MarginalB(int b, int x, int y) const;

  static Behavior Uniform();

 private:
  std::array<double, 16> table_;
};

// P(a,b|x,y) = sum_l P(l) P(a|x,l) P(b|y,l).
struct LhvModel {
  std::vector<double> lambda_weights;
  // response_a[l][x][a] = P(a|x,l); response_b[l][y][b] = P(b|y,l).
  std::vector<std::array<std::array<double, 2>, 2>> response_a;
  std::vector<std::array<std::array<double, 2>, 2>> response_b;

  int num_lambda() const { return static_cast<int>(lambda_weights.size()); }
  // Throws DistributionError when a weight vector or response slice is not
  // a probability vector.
  void Validate() const;
};

// a = f(x), b = g(y). Bit x of `f` is f(x); bit y of `g` is g(y).
struct LocalStrategy {
  int f = 0;
  int g = 0;
  int a(int x) const { return (f >> x) & 1; }
  int b(int y) const { return (g >> y) & 1; }
};

// The 16 local deterministic strategies, f-major.
std::array<LocalStrategy, 16> LocalStrategies();
// Each strategy as a single-valued LhvModel, in LocalStrategies() order.
std::vector<LhvModel> DeterministicStrategies();
// An LhvModel whose hidden variable ranges over the 16 local strategies.
LhvModel StrategyMixture(const std::array<double, 16>& weights);

Behavior BehaviorFromLhv(const LhvModel& model);

// Variant v uses the signs +,+,+,- on E00,E01,E10,E11 with the minus moved
// to position 3 - (v mod 4), negated overall for v >= 4. Variant 0 is
// E00 + E01 + E10 - E11.
std::array<int, 4> ChshSigns(int variant);
double ChshValue(const Behavior& behavior, int variant);
// CHSH of a deterministic strategy in exact integer arithmetic.
int ChshValue(const LocalStrategy& strategy, int variant);

// E(x,y) = -cos(theta_x - phi_y).
Behavior SingletBehavior(double theta0, double theta1, double phi0,
                         double phi1);
// P(a,b|x,y) = 1/2 iff a xor b = x*y xor alpha*x xor beta*y xor gamma.
Behavior PrBox(int alpha = 0, int beta = 0, int gamma = 0);

AuditReport NoSignallingCheck(const Behavior& behavior, double eps);

struct FacetViolation {
  int variant = 0;
  double value = 0.0;
};

struct MembershipVerdict {
  bool local = false;
  std::optional<LhvModel> model;             // when local
  std::optional<FacetViolation> violated;    // when not local
  double reconstruction_error = 0.0;         // max |model - behavior|
  double max_chsh = 0.0;
  int max_chsh_variant = 0;
};

// Decides whether the behavior is a convex mixture of the 16 local
// strategies, twice: by an L1 fit of the mixture weights (local iff every
// entry is reproduced within eps) and by the eight CHSH facets (nonlocal iff
// some variant exceeds 2 + eps). Throws QueryError for a signalling input
// and InternalError if the two routes disagree.
MembershipVerdict LhvMembership(const Behavior& behavior, double eps);

// The Bell-scenario joint over X, Y, A, B, Lambda with uniform setting
// priors, in BellDag declaration order.
JointTable JointFromLhv(const LhvModel& model);
// The joint over X, Y, A, B with uniform setting priors.
JointTable BehaviorJoint(const Behavior& behavior);

// The four reductions behind the factorized form, checked on a joint over
// the Bell variables:
//   P(a|b,x,y,l) = P(a|x,l), P(b|x,y,l) = P(b|y,l), P(l|x,y) = P(l),
//   P(x|y) = P(x).
AuditReport ScreeningAudit(const JointTable& joint, double eps);

// Asserts the marginal independences that q-separation on the Bell DAG
// implies among X, Y, A, B given the empty set; pairs that are not
// q-separated are listed as informational rows.
AuditReport QuantumCausalityAudit(const Behavior& behavior, double eps);

// Random weights and random (non-deterministic) response tables.
LhvModel RandomLhvModel(std::uint64_t seed,
                        int lambda_cardinality = kDefaultLambdaCardinality);

// Text format: 16 lines "a b x y prob".
Behavior ParseBehavior(std::string_view text);
std::string SerializeBehavior(const Behavior& behavior);
Behavior LoadBehaviorFile(const std::string& path);

std::string FormatMembership(const MembershipVerdict& verdict);
// "local,variant,value,w0,...,w15".
std::string FormatMembershipCsv(const MembershipVerdict& verdict);

}  // namespace causalnet

#endif  // CAUSALNET_BELL_H_
