#include "causalnet/dag.h"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include "causalnet/errors.h"

namespace causalnet {

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kSetting:
      return "setting";
    case NodeKind::kOutcome:
      return "outcome";
    case NodeKind::kLatent:
      return "latent";
  }
  return "outcome";
}

std::optional<NodeKind> ParseNodeKind(std::string_view text) {
  if (text == "setting") return NodeKind::kSetting;
  if (text == "outcome") return NodeKind::kOutcome;
  if (text == "latent") return NodeKind::kLatent;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// NodeSet

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : ids_(ids) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool NodeSet::Contains(NodeId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

void NodeSet::Insert(NodeId id) {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) ids_.insert(it, id);
}

NodeSet NodeSet::Union(const NodeSet& other) const {
  NodeSet out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(),
                 other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

NodeSet NodeSet::Intersection(const NodeSet& other) const {
  NodeSet out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(),
                        other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

NodeSet NodeSet::Minus(const NodeSet& other) const {
  NodeSet out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(),
                      other.ids_.end(), std::back_inserter(out.ids_));
  return out;
}

bool NodeSet::Intersects(const NodeSet& other) const {
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Dag

namespace {

bool ValidName(std::string_view name) {
  if (name.empty() || name == "->") return false;
  for (char c : name) {
    if (c == ',' || c == '#' || c == ' ' || c == '\t' || c == '\r' ||
        c == '\n') {
      return false;
    }
  }
  return true;
}

}  // namespace

Dag Dag::Build(std::vector<NodeSpec> nodes, std::vector<EdgeSpec> edges) {
  Dag dag;
  dag.nodes_ = std::move(nodes);
  for (int i = 0; i < dag.num_nodes(); ++i) {
    const NodeSpec& spec = dag.nodes_[i];
    if (!ValidName(spec.name)) {
      throw GraphError("invalid node name '" + spec.name + "'");
    }
    if (spec.cardinality < 1) {
      throw GraphError("node '" + spec.name +
                       "' must have a positive cardinality");
    }
    if (!dag.by_name_.emplace(spec.name, i).second) {
      throw GraphError("duplicate node '" + spec.name + "'");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const EdgeSpec& e : edges) {
    auto tail = dag.Find(e.tail);
    auto head = dag.Find(e.head);
    if (!tail) throw GraphError("unknown edge endpoint '" + e.tail + "'");
    if (!head) throw GraphError("unknown edge endpoint '" + e.head + "'");
    if (*tail == *head) throw GraphError("self-loop on '" + e.tail + "'");
    if (dag.kind(*head) == NodeKind::kLatent) {
      throw GraphError("edge into latent node '" + e.head +
                       "' (latent nodes must be exogenous)");
    }
    if (!seen.emplace(tail->value, head->value).second) {
      throw GraphError("duplicate edge " + e.tail + " -> " + e.head);
    }
    dag.edges_.emplace_back(*tail, *head);
  }
  dag.Index();

  // Cycle check by iterative DFS; a back edge closes a cycle that is read
  // off the explicit stack.
  const int n = dag.num_nodes();
  std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
  for (int root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& kids = dag.children_[v];
      if (next == kids.size()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      int w = kids[next++].value;
      if (color[w] == 1) {
        std::string msg = "cycle detected: ";
        auto it = std::find_if(stack.begin(), stack.end(),
                               [w](const auto& f) { return f.first == w; });
        for (; it != stack.end(); ++it) {
          msg += dag.nodes_[it->first].name + " -> ";
        }
        msg += dag.nodes_[w].name;
        throw GraphError(msg);
      }
      if (color[w] == 0) {
        color[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }
  return dag;
}

void Dag::Index() {
  parents_.assign(nodes_.size(), {});
  children_.assign(nodes_.size(), {});
  for (auto [tail, head] : edges_) {
    parents_[head.value].push_back(tail);
    children_[tail.value].push_back(head);
  }
  for (auto& p : parents_) std::sort(p.begin(), p.end());
  for (auto& c : children_) std::sort(c.begin(), c.end());
}

const NodeSpec& Dag::node(NodeId id) const {
  if (id.value < 0 || id.value >= num_nodes()) {
    throw GraphError("node id " + std::to_string(id.value) +
                     " out of range");
  }
  return nodes_[id.value];
}

std::optional<NodeId> Dag::Find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return NodeId{it->second};
}

NodeId Dag::Id(std::string_view name) const {
  auto id = Find(name);
  if (!id) throw GraphError("unknown node '" + std::string(name) + "'");
  return *id;
}

NodeSet Dag::Ids(std::span<const std::string> names) const {
  std::vector<NodeId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(Id(n));
  return NodeSet(std::move(ids));
}

std::vector<std::string> Dag::Names(const NodeSet& set) const {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (NodeId id : set) out.push_back(name(id));
  return out;
}

bool Dag::HasEdge(NodeId tail, NodeId head) const {
  const auto& kids = children_.at(tail.value);
  return std::binary_search(kids.begin(), kids.end(), head);
}

NodeSet Dag::Parents(NodeId v) const {
  node(v);
  return NodeSet(parents_[v.value]);
}

NodeSet Dag::Children(NodeId v) const {
  node(v);
  return NodeSet(children_[v.value]);
}

namespace {

std::vector<NodeId> Closure(const std::vector<std::vector<NodeId>>& adj,
                            const std::vector<NodeId>& seeds, int n) {
  std::vector<char> seen(n, 0);
  std::vector<NodeId> frontier;
  for (NodeId s : seeds) {
    for (NodeId w : adj[s.value]) {
      if (!seen[w.value]) {
        seen[w.value] = 1;
        frontier.push_back(w);
      }
    }
  }
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (NodeId w : adj[frontier[i].value]) {
      if (!seen[w.value]) {
        seen[w.value] = 1;
        frontier.push_back(w);
      }
    }
  }
  return frontier;
}

}  // namespace

NodeSet Dag::Ancestors(NodeId v) const {
  node(v);
  return NodeSet(Closure(parents_, {v}, num_nodes()));
}

NodeSet Dag::Descendants(NodeId v) const {
  node(v);
  return NodeSet(Closure(children_, {v}, num_nodes()));
}

NodeSet Dag::AncestorsOf(const NodeSet& set) const {
  for (NodeId v : set) node(v);
  return NodeSet(Closure(parents_, set.ids(), num_nodes()));
}

NodeSet Dag::NonDescendants(NodeId v) const {
  NodeSet out = AllNodes().Minus(Descendants(v));
  return out.Minus(NodeSet{v});
}

NodeSet Dag::NodesOfKind(NodeKind k) const {
  std::vector<NodeId> ids;
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes_[i].kind == k) ids.push_back(NodeId{i});
  }
  return NodeSet(std::move(ids));
}

NodeSet Dag::AllNodes() const {
  std::vector<NodeId> ids(nodes_.size());
  for (int i = 0; i < num_nodes(); ++i) ids[i] = NodeId{i};
  return NodeSet(std::move(ids));
}

std::vector<NodeId> Dag::TopologicalOrder() const {
  const int n = num_nodes();
  std::vector<int> indegree(n);
  for (int i = 0; i < n; ++i) {
    indegree[i] = static_cast<int>(parents_[i].size());
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<NodeId> order;
  order.reserve(n);
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(NodeId{v});
    for (NodeId w : children_[v]) {
      if (--indegree[w.value] == 0) ready.push(w.value);
    }
  }
  return order;
}

}  // namespace causalnet
