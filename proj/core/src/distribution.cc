#include "causalnet/distribution.h"

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "causalnet/errors.h"

namespace causalnet {

namespace {

std::size_t CheckedSize(const std::vector<Variable>& vars) {
  std::size_t size = 1;
  for (const auto& v : vars) {
    if (v.cardinality < 1) {
      throw DistributionError("variable '" + v.name +
                              "' must have a positive cardinality");
    }
    if (size > kMaxJointEntries / static_cast<std::size_t>(v.cardinality)) {
      throw DistributionError("joint table exceeds " +
                              std::to_string(kMaxJointEntries) + " entries");
    }
    size *= static_cast<std::size_t>(v.cardinality);
  }
  return size;
}

void CheckSimplex(std::span<const double> slice, const std::string& what) {
  double sum = 0.0;
  for (double v : slice) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DistributionError(what + " has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw DistributionError(what + " sums to " + std::to_string(sum) +
                            ", not 1");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// JointTable

JointTable::JointTable(std::vector<Variable> variables,
                       std::vector<double> probs)
    : variables_(std::move(variables)), probs_(std::move(probs)) {
  const std::size_t size = CheckedSize(variables_);
  std::set<std::string> names;
  for (const auto& v : variables_) {
    if (!names.insert(v.name).second) {
      throw DistributionError("duplicate variable '" + v.name + "'");
    }
  }
  if (probs_.size() != size) {
    throw DistributionError("expected " + std::to_string(size) +
                            " probabilities, got " +
                            std::to_string(probs_.size()));
  }
  CheckSimplex(probs_, "joint table");
  strides_.assign(variables_.size(), 1);
  for (int i = num_variables() - 2; i >= 0; --i) {
    strides_[i] = strides_[i + 1] * variables_[i + 1].cardinality;
  }
}

JointTable JointTable::Uniform(std::vector<Variable> variables) {
  const std::size_t size = CheckedSize(variables);
  return JointTable(std::move(variables),
                    std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

std::optional<int> JointTable::Find(std::string_view name) const {
  for (int i = 0; i < num_variables(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

int JointTable::Index(std::string_view name) const {
  auto i = Find(name);
  if (!i) throw QueryError("unknown variable '" + std::string(name) + "'");
  return *i;
}

std::size_t JointTable::FlatIndex(std::span<const int> assignment) const {
  if (assignment.size() != variables_.size()) {
    throw QueryError("assignment has the wrong number of values");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < 0 || assignment[i] >= variables_[i].cardinality) {
      throw QueryError("value out of range for '" + variables_[i].name + "'");
    }
    flat += strides_[i] * static_cast<std::size_t>(assignment[i]);
  }
  return flat;
}

double JointTable::At(std::span<const int> assignment) const {
  return probs_[FlatIndex(assignment)];
}

std::vector<int> JointTable::Assignment(std::size_t flat) const {
  std::vector<int> out(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    out[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return out;
}

JointTable JointTable::Marginal(std::span<const int> variable_indices) const {
  std::vector<Variable> vars;
  std::vector<std::size_t> src_strides;
  std::set<int> seen;
  for (int idx : variable_indices) {
    if (idx < 0 || idx >= num_variables() || !seen.insert(idx).second) {
      throw QueryError("invalid marginal variable list");
    }
    vars.push_back(variables_[idx]);
    src_strides.push_back(strides_[idx]);
  }
  const std::size_t out_size = CheckedSize(vars);
  std::vector<std::size_t> out_strides(vars.size(), 1);
  for (int i = static_cast<int>(vars.size()) - 2; i >= 0; --i) {
    out_strides[i] = out_strides[i + 1] * vars[i + 1].cardinality;
  }
  std::vector<double> out(out_size, 0.0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const std::size_t value =
          (flat / src_strides[k]) % static_cast<std::size_t>(vars[k].cardinality);
      target += value * out_strides[k];
    }
    out[target] += probs_[flat];
  }
  return JointTable(std::move(vars), std::move(out));
}

bool JointTable::StrictlyPositive() const {
  for (double v : probs_) {
    if (!(v > 0.0)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ConditionalTable

std::size_t ConditionalTable::num_contexts() const {
  std::size_t n = 1;
  for (const auto& p : parents) n *= static_cast<std::size_t>(p.cardinality);
  return n;
}

void ConditionalTable::Validate() const {
  if (child.cardinality < 1) {
    throw DistributionError("conditional for '" + child.name +
                            "' has a non-positive cardinality");
  }
  std::vector<Variable> all = parents;
  all.push_back(child);
  CheckedSize(all);
  const std::size_t k = static_cast<std::size_t>(child.cardinality);
  if (entries.size() != num_contexts() * k) {
    throw DistributionError("conditional for '" + child.name + "' expects " +
                            std::to_string(num_contexts() * k) + " entries");
  }
  for (std::size_t c = 0; c < num_contexts(); ++c) {
    CheckSimplex(std::span<const double>(entries).subspan(c * k, k),
                 "conditional slice of '" + child.name + "'");
  }
}

double ConditionalTable::Prob(int child_value,
                              std::span<const int> parent_values) const {
  std::size_t context = 0;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    context = context * parents[i].cardinality + parent_values[i];
  }
  return entries[context * child.cardinality + child_value];
}

// ---------------------------------------------------------------------------
// Factorizations

JointTable ProductOfConditionals(std::vector<Variable> variables,
                                 std::span<const ConditionalTable> tables) {
  const std::size_t size = CheckedSize(variables);
  auto index_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (variables[i].name == name) return static_cast<int>(i);
    }
    throw QueryError("conditional refers to unknown variable '" + name + "'");
  };
  if (tables.size() != variables.size()) {
    throw QueryError("need exactly one conditional per variable");
  }
  struct Factor {
    const ConditionalTable* table;
    int child;
    std::vector<int> parents;
  };
  std::vector<Factor> factors;
  std::vector<char> covered(variables.size(), 0);
  for (const auto& t : tables) {
    t.Validate();
    Factor f{&t, index_of(t.child.name), {}};
    if (covered[f.child]++) {
      throw QueryError("two conditionals for '" + t.child.name + "'");
    }
    if (variables[f.child].cardinality != t.child.cardinality) {
      throw QueryError("cardinality mismatch for '" + t.child.name + "'");
    }
    for (const auto& p : t.parents) {
      int pi = index_of(p.name);
      if (variables[pi].cardinality != p.cardinality) {
        throw QueryError("cardinality mismatch for parent '" + p.name + "'");
      }
      f.parents.push_back(pi);
    }
    factors.push_back(std::move(f));
  }

  std::vector<double> probs(size);
  std::vector<int> assignment(variables.size(), 0);
  std::vector<int> parent_values;
  for (std::size_t flat = 0; flat < size; ++flat) {
    double prob = 1.0;
    for (const auto& f : factors) {
      parent_values.clear();
      for (int pi : f.parents) parent_values.push_back(assignment[pi]);
      prob *= f.table->Prob(assignment[f.child], parent_values);
    }
    probs[flat] = prob;
    // Advance the mixed-radix counter, last variable fastest.
    for (int i = static_cast<int>(variables.size()) - 1; i >= 0; --i) {
      if (++assignment[i] < variables[i].cardinality) break;
      assignment[i] = 0;
    }
  }
  return JointTable(std::move(variables), std::move(probs));
}

std::vector<Variable> VariablesOf(const Dag& dag) {
  std::vector<Variable> vars;
  for (const auto& n : dag.nodes()) vars.push_back({n.name, n.cardinality});
  return vars;
}

JointTable JointFromTables(const Dag& dag,
                           std::span<const ConditionalTable> tables) {
  if (tables.size() != static_cast<std::size_t>(dag.num_nodes())) {
    throw QueryError("expected " + std::to_string(dag.num_nodes()) +
                     " conditional tables, got " +
                     std::to_string(tables.size()));
  }
  for (const auto& t : tables) {
    auto id = dag.Find(t.child.name);
    if (!id) throw QueryError("extra table for '" + t.child.name + "'");
    if (t.child.cardinality != dag.cardinality(*id)) {
      throw QueryError("cardinality mismatch for '" + t.child.name + "'");
    }
    std::vector<NodeId> parent_ids;
    for (const auto& p : t.parents) {
      auto pid = dag.Find(p.name);
      if (!pid) throw QueryError("unknown parent '" + p.name + "'");
      if (p.cardinality != dag.cardinality(*pid)) {
        throw QueryError("cardinality mismatch for parent '" + p.name + "'");
      }
      parent_ids.push_back(*pid);
    }
    if (NodeSet(parent_ids) != dag.Parents(*id) ||
        parent_ids.size() != t.parents.size()) {
      throw QueryError("parents of '" + t.child.name +
                       "' differ from the graph's");
    }
  }
  return ProductOfConditionals(VariablesOf(dag), tables);
}

namespace {

// P(child | given) read off p, with uniform slices on null contexts.
ConditionalTable Conditional(const JointTable& p, int child,
                             const std::vector<int>& given) {
  std::vector<int> order = given;
  order.push_back(child);
  const JointTable joint = p.Marginal(order);
  ConditionalTable t;
  t.child = p.variables()[child];
  for (int g : given) t.parents.push_back(p.variables()[g]);
  const std::size_t k = static_cast<std::size_t>(t.child.cardinality);
  t.entries.resize(joint.size());
  for (std::size_t c = 0; c < joint.size() / k; ++c) {
    double mass = 0.0;
    for (std::size_t v = 0; v < k; ++v) mass += joint[c * k + v];
    for (std::size_t v = 0; v < k; ++v) {
      t.entries[c * k + v] =
          mass > 0.0 ? joint[c * k + v] / mass : 1.0 / static_cast<double>(k);
    }
  }
  return t;
}

}  // namespace

std::vector<ConditionalTable> ChainFactorize(
    const JointTable& p, std::span<const std::string> order) {
  if (order.size() != static_cast<std::size_t>(p.num_variables())) {
    throw QueryError("order must list every variable exactly once");
  }
  std::vector<int> indices;
  std::set<int> seen;
  for (const auto& name : order) {
    int i = p.Index(name);
    if (!seen.insert(i).second) {
      throw QueryError("order repeats '" + name + "'");
    }
    indices.push_back(i);
  }
  std::vector<ConditionalTable> out;
  std::vector<int> prefix;
  for (int i : indices) {
    out.push_back(Conditional(p, i, prefix));
    prefix.push_back(i);
  }
  return out;
}

std::vector<ConditionalTable> ExtractConditionals(const JointTable& p,
                                                  const Dag& dag) {
  std::vector<ConditionalTable> out;
  for (int i = 0; i < dag.num_nodes(); ++i) {
    std::vector<int> given;
    for (NodeId parent : dag.Parents(NodeId{i})) {
      given.push_back(p.Index(dag.name(parent)));
    }
    out.push_back(Conditional(p, p.Index(dag.name(NodeId{i})), given));
  }
  return out;
}

std::vector<ConditionalTable> RandomTables(const Dag& dag,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> unit_exp(1.0);
  std::vector<ConditionalTable> tables;
  for (int i = 0; i < dag.num_nodes(); ++i) {
    const NodeId v{i};
    ConditionalTable t;
    t.child = {dag.name(v), dag.cardinality(v)};
    for (NodeId parent : dag.Parents(v)) {
      t.parents.push_back({dag.name(parent), dag.cardinality(parent)});
    }
    const std::size_t k = static_cast<std::size_t>(t.child.cardinality);
    t.entries.resize(t.num_contexts() * k);
    for (std::size_t c = 0; c < t.num_contexts(); ++c) {
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        double draw = unit_exp(rng);
        t.entries[c * k + j] = draw;
        sum += draw;
      }
      for (std::size_t j = 0; j < k; ++j) t.entries[c * k + j] /= sum;
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

JointTable RandomCompatible(const Dag& dag, std::uint64_t seed) {
  return JointFromTables(dag, RandomTables(dag, seed));
}

}  // namespace causalnet
