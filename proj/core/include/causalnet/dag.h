#ifndef CAUSALNET_DAG_H_
#define CAUSALNET_DAG_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace causalnet {

enum class NodeKind { kSetting, kOutcome, kLatent };

std::string_view NodeKindName(NodeKind kind);
std::optional<NodeKind> ParseNodeKind(std::string_view text);

// Index of a node in its graph's declaration order.
struct NodeId {
  int value = -1;
  friend auto operator<=>(NodeId, NodeId) = default;
};

// Sorted, duplicate-free set of node ids. Iteration follows declaration
// order, which is what every deterministic output in the library relies on.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids);
  explicit NodeSet(std::vector<NodeId> ids);

  bool Contains(NodeId id) const;
  void Insert(NodeId id);
  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<NodeId>& ids() const { return ids_; }

  NodeSet Union(const NodeSet& other) const;
  NodeSet Intersection(const NodeSet& other) const;
  NodeSet Minus(const NodeSet& other) const;
  bool Intersects(const NodeSet& other) const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  std::vector<NodeId> ids_;
};

struct NodeSpec {
  std::string name;
  NodeKind kind = NodeKind::kOutcome;
  int cardinality = 2;
};

struct EdgeSpec {
  std::string tail;
  std::string head;
};

// Immutable typed DAG. Construction validates every structural invariant;
// an instance that exists is acyclic, has unique names, no self-loops, no
// duplicate edges and no edges into latent nodes.
class Dag {
 public:
  // Throws GraphError describing the first violated invariant. A cycle is
  // reported with its node sequence, e.g. "cycle detected: X -> Y -> X".
  static Dag Build(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges);

  Dag() = default;

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const NodeSpec& node(NodeId id) const;
  const std::string& name(NodeId id) const { return node(id).name; }
  NodeKind kind(NodeId id) const { return node(id).kind; }
  int cardinality(NodeId id) const { return node(id).cardinality; }

  std::optional<NodeId> Find(std::string_view name) const;
  // Throws GraphError for unknown names.
  NodeId Id(std::string_view name) const;
  NodeSet Ids(std::span<const std::string> names) const;
  std::vector<std::string> Names(const NodeSet& set) const;

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  // Edges as (tail, head) in declaration order.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const {
    return edges_;
  }
  bool HasEdge(NodeId tail, NodeId head) const;

  NodeSet Parents(NodeId v) const;
  NodeSet Children(NodeId v) const;
  NodeSet Ancestors(NodeId v) const;
  NodeSet Descendants(NodeId v) const;
  // Union of the ancestors of every member of `set`, members excluded
  // unless they are themselves ancestors of another member.
  NodeSet AncestorsOf(const NodeSet& set) const;
  NodeSet NonDescendants(NodeId v) const;
  NodeSet NodesOfKind(NodeKind kind) const;
  NodeSet AllNodes() const;

  // Kahn's algorithm, ties broken by declaration order.
  std::vector<NodeId> TopologicalOrder() const;

  // True when a directed path of length >= 1 leads from `from` to `to`.
  bool HasDirectedPath(NodeId from, NodeId to) const {
    return Descendants(from).Contains(to);
  }

 private:
  void Index();

  std::vector<NodeSpec> nodes_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::unordered_map<std::string, int> by_name_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::vector<NodeId>> children_;
};

// Line-oriented text format:
//   node <name> [<kind>] <cardinality>    (kind defaults to outcome)
//   edge <name> -> <name>
// '#' starts a comment; blank lines are ignored.
Dag ParseDag(std::string_view text);
std::string SerializeDag(const Dag& dag);

Dag LoadDagFile(const std::string& path);

}  // namespace causalnet

#endif  // CAUSALNET_DAG_H_
