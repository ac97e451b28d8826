#ifndef CAUSALNET_DISTRIBUTION_H_
#define CAUSALNET_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causalnet/dag.h"

namespace causalnet {

struct Variable {
  std::string name;
  int cardinality = 2;
  friend bool operator==(const Variable&, const Variable&) = default;
};

inline constexpr std::size_t kMaxJointEntries = std::size_t{1} << 20;
// Entries must sum to one within this tolerance.
inline constexpr double kNormalizationTolerance = 1e-9;

// Dense joint distribution over named finite variables. The flat index is
// mixed-radix with the last variable varying fastest.
class JointTable {
 public:
  // Throws DistributionError on shape mismatch, negative entries,
  // bad normalization, duplicate names, or more than kMaxJointEntries cells.
  JointTable(std::vector<Variable> variables, std::vector<double> probs);

  static JointTable Uniform(std::vector<Variable> variables);

  const std::vector<Variable>& variables() const { return variables_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  std::span<const double> probabilities() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

  std::optional<int> Find(std::string_view name) const;
  // Throws QueryError for unknown names.
  int Index(std::string_view name) const;

  double operator[](std::size_t flat) const { return probs_[flat]; }
  double At(std::span<const int> assignment) const;
  std::size_t FlatIndex(std::span<const int> assignment) const;
  std::vector<int> Assignment(std::size_t flat) const;

  // Marginal over the listed variables, in the listed order.
  JointTable Marginal(std::span<const int> variable_indices) const;
  // Same variables, reordered.
  JointTable Reordered(std::span<const int> variable_indices) const {
    return Marginal(variable_indices);
  }

  bool StrictlyPositive() const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> probs_;
  std::vector<std::size_t> strides_;
};

// P(child | parents). Entries are grouped by parent assignment (mixed radix,
// last parent fastest); each group is one simplex over the child's values.
struct ConditionalTable {
  Variable child;
  std::vector<Variable> parents;
  std::vector<double> entries;

  std::size_t num_contexts() const;
  // Throws DistributionError when a slice is not a probability vector
  // within kNormalizationTolerance or the entry count is wrong.
  void Validate() const;
  double Prob(int child_value, std::span<const int> parent_values) const;
};

// Multiplies one conditional per variable into a joint over `variables`.
JointTable ProductOfConditionals(std::vector<Variable> variables,
                                 std::span<const ConditionalTable> tables);

// The product of P(x_j | pa_j) over the graph's nodes, in declaration order.
// Throws QueryError for missing or extra tables, parents that differ from
// the graph's, or cardinality mismatches.
JointTable JointFromTables(const Dag& dag,
                           std::span<const ConditionalTable> tables);

// P(x_j | x_1..x_{j-1}) along `order`. Contexts of probability zero get a
// uniform conditional. Throws QueryError unless `order` is a permutation
// of the table's variables.
std::vector<ConditionalTable> ChainFactorize(
    const JointTable& p, std::span<const std::string> order);

// P(v | pa(v)) for every node, read off p.
std::vector<ConditionalTable> ExtractConditionals(const JointTable& p,
                                                  const Dag& dag);

// Each conditional slice is drawn uniformly from its simplex by normalizing
// independent unit-exponential draws. Deterministic per seed.
std::vector<ConditionalTable> RandomTables(const Dag& dag,
                                           std::uint64_t seed);
JointTable RandomCompatible(const Dag& dag, std::uint64_t seed);

std::vector<Variable> VariablesOf(const Dag& dag);

// Text format: "vars <name:card> ..." then "<v1> ... <vn> <prob>" per line.
// Omitted assignments are zero.
JointTable ParseJointTable(std::string_view text);
std::string SerializeJointTable(const JointTable& p);
JointTable LoadJointTableFile(const std::string& path);

}  // namespace causalnet

#endif  // CAUSALNET_DISTRIBUTION_H_
