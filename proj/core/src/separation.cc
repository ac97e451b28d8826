#include "causalnet/separation.h"

#include <algorithm>
#include <utility>

#include "causalnet/errors.h"

namespace causalnet {

void CondQuery::Validate(const Dag& dag) const {
  for (const NodeSet* set : {&x, &y, &z}) {
    for (NodeId id : *set) {
      if (id.value < 0 || id.value >= dag.num_nodes()) {
        throw QueryError("query names a node outside the graph");
      }
    }
  }
  if (x.empty() || y.empty()) {
    throw QueryError("query sets X and Y must be nonempty");
  }
  if (x.Intersects(y) || x.Intersects(z) || y.Intersects(z)) {
    throw QueryError("query sets X, Y, Z must be pairwise disjoint");
  }
}

CondQuery MakeQuery(const Dag& dag, const std::vector<std::string>& x,
                    const std::vector<std::string>& y,
                    const std::vector<std::string>& z) {
  CondQuery q{dag.Ids(x), dag.Ids(y), dag.Ids(z)};
  if (q.x.size() != x.size() || q.y.size() != y.size() ||
      q.z.size() != z.size()) {
    throw QueryError("query sets must not repeat a node");
  }
  q.Validate(dag);
  return q;
}

std::string FormatPath(const Dag& dag, const UndirectedPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.nodes.size(); ++i) {
    if (i > 0) out += path.forward[i - 1] ? " -> " : " <- ";
    out += dag.name(path.nodes[i]);
  }
  return out;
}

bool IsValidPath(const Dag& dag, const UndirectedPath& path) {
  if (path.nodes.size() < 2 ||
      path.forward.size() + 1 != path.nodes.size()) {
    return false;
  }
  NodeSet seen(path.nodes);
  if (seen.size() != path.nodes.size()) return false;
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    NodeId a = path.nodes[i];
    NodeId b = path.nodes[i + 1];
    if (path.forward[i] ? !dag.HasEdge(a, b) : !dag.HasEdge(b, a)) {
      return false;
    }
  }
  return true;
}

namespace {

struct Neighbour {
  NodeId node;
  bool forward;  // edge points away from the current node
};

std::vector<std::vector<Neighbour>> Adjacency(const Dag& dag) {
  std::vector<std::vector<Neighbour>> adj(dag.num_nodes());
  for (int i = 0; i < dag.num_nodes(); ++i) {
    NodeId v{i};
    for (NodeId p : dag.Parents(v)) adj[i].push_back({p, false});
    for (NodeId c : dag.Children(v)) adj[i].push_back({c, true});
    std::sort(adj[i].begin(), adj[i].end(),
              [](const Neighbour& a, const Neighbour& b) {
                return a.node < b.node;
              });
  }
  return adj;
}

// Depth-first search over simple paths starting at `from`. `extend` decides
// whether a partial path may continue through its last node given the next
// step; `accept` is called on every path that reaches a target. Returning
// true from `accept` stops the search.
template <typename Extend, typename Accept>
bool SearchPaths(const Dag& dag, NodeId from, const NodeSet& targets,
                 Extend&& extend, Accept&& accept) {
  const auto adj = Adjacency(dag);
  std::vector<char> on_path(dag.num_nodes(), 0);
  UndirectedPath path;
  path.nodes.push_back(from);
  on_path[from.value] = 1;

  // Explicit stack of neighbour cursors keeps deep graphs off the call stack.
  std::vector<std::size_t> cursor{0};
  while (!cursor.empty()) {
    NodeId v = path.nodes.back();
    std::size_t& next = cursor.back();
    if (next == adj[v.value].size()) {
      on_path[v.value] = 0;
      path.nodes.pop_back();
      if (!path.forward.empty()) path.forward.pop_back();
      cursor.pop_back();
      continue;
    }
    const Neighbour nb = adj[v.value][next++];
    if (on_path[nb.node.value]) continue;
    if (path.nodes.size() > 1 && !extend(path, nb.forward)) continue;
    path.nodes.push_back(nb.node);
    path.forward.push_back(nb.forward);
    if (targets.Contains(nb.node)) {
      if (accept(path)) return true;
      path.nodes.pop_back();
      path.forward.pop_back();
      continue;
    }
    on_path[nb.node.value] = 1;
    cursor.push_back(0);
  }
  return false;
}

}  // namespace

std::vector<UndirectedPath> EnumeratePaths(const Dag& dag, NodeId u,
                                           NodeId v) {
  dag.node(u);
  dag.node(v);
  if (u == v) throw QueryError("path endpoints must differ");
  std::vector<UndirectedPath> out;
  SearchPaths(
      dag, u, NodeSet{v}, [](const UndirectedPath&, bool) { return true; },
      [&](const UndirectedPath& p) {
        out.push_back(p);
        return false;
      });
  return out;
}

bool PathDBlocked(const Dag& dag, const UndirectedPath& path,
                  const NodeSet& z) {
  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
    NodeId m = path.nodes[i];
    if (path.IsCollider(i)) {
      if (!z.Contains(m) && !dag.Descendants(m).Intersects(z)) return true;
    } else if (z.Contains(m)) {
      return true;
    }
  }
  return false;
}

SeparationVerdict DSeparated(const Dag& dag, const CondQuery& query) {
  query.Validate(dag);
  const int n = dag.num_nodes();
  const NodeSet z = query.z;
  // Colliders open exactly on Z and its ancestors.
  const NodeSet opens_collider = z.Union(dag.AncestorsOf(z));

  // State (v, up): v entered from a child, or a start node.
  // State (v, down): v entered from a parent.
  std::vector<char> visited_up(n, 0), visited_down(n, 0);
  std::vector<std::pair<NodeId, bool>> queue;  // (node, up)
  for (NodeId x : query.x) {
    visited_up[x.value] = 1;
    queue.emplace_back(x, true);
  }
  bool connected = false;
  for (std::size_t head = 0; head < queue.size() && !connected; ++head) {
    auto [v, up] = queue[head];
    const bool in_z = z.Contains(v);
    if (!in_z && query.y.Contains(v)) {
      connected = true;
      break;
    }
    auto push = [&](NodeId w, bool w_up) {
      auto& seen = w_up ? visited_up : visited_down;
      if (!seen[w.value]) {
        seen[w.value] = 1;
        queue.emplace_back(w, w_up);
      }
    };
    if (up && !in_z) {
      for (NodeId p : dag.Parents(v)) push(p, true);
      for (NodeId c : dag.Children(v)) push(c, false);
    } else if (!up) {
      if (!in_z) {
        for (NodeId c : dag.Children(v)) push(c, false);
      }
      if (opens_collider.Contains(v)) {
        for (NodeId p : dag.Parents(v)) push(p, true);
      }
    }
  }
  if (!connected) return {};

  // Recover a simple active path by a search that only extends through
  // locally open triples.
  auto open_through = [&](const UndirectedPath& p, bool next_forward) {
    NodeId m = p.nodes.back();
    const bool collider = p.forward.back() && !next_forward;
    return collider ? opens_collider.Contains(m) : !z.Contains(m);
  };
  SeparationVerdict verdict{false, std::nullopt};
  for (NodeId x : query.x) {
    const bool found = SearchPaths(
        dag, x, query.y, open_through, [&](const UndirectedPath& p) {
          verdict.witness = p;
          return true;
        });
    if (found) return verdict;
  }
  throw InternalError("d-separation sweep found a connection but no path");
}

SeparationVerdict DSeparatedByPaths(const Dag& dag, const CondQuery& query) {
  query.Validate(dag);
  for (NodeId x : query.x) {
    for (NodeId y : query.y) {
      for (auto& path : EnumeratePaths(dag, x, y)) {
        if (!PathDBlocked(dag, path, query.z)) {
          return {false, std::move(path)};
        }
      }
    }
  }
  return {};
}

namespace {

bool ReachesOutcomeIn(const Dag& dag, NodeId v, const NodeSet& z_outcomes) {
  return dag.Descendants(v).Intersects(z_outcomes);
}

void RequireObservedEndpoint(const Dag& dag, NodeId v) {
  if (dag.kind(v) == NodeKind::kLatent) {
    throw QueryError("q-separation is defined over settings and outcomes; '" +
                     dag.name(v) + "' is latent");
  }
}

}  // namespace

bool PathQInactive(const Dag& dag, const UndirectedPath& path,
                   const NodeSet& z) {
  const NodeId s = path.nodes.front();
  const NodeId t = path.nodes.back();
  RequireObservedEndpoint(dag, s);
  RequireObservedEndpoint(dag, t);
  const NodeSet z_outcomes =
      z.Intersection(dag.NodesOfKind(NodeKind::kOutcome));

  const NodeKind ks = dag.kind(s);
  const NodeKind kt = dag.kind(t);
  // (i) two settings, one of which cannot reach an outcome in Z.
  if (ks == NodeKind::kSetting && kt == NodeKind::kSetting) {
    if (!ReachesOutcomeIn(dag, s, z_outcomes) ||
        !ReachesOutcomeIn(dag, t, z_outcomes)) {
      return true;
    }
  }
  // (ii) a setting that reaches neither the outcome end nor an outcome in Z.
  if (ks != kt) {
    const NodeId setting = ks == NodeKind::kSetting ? s : t;
    const NodeId outcome = ks == NodeKind::kSetting ? t : s;
    if (!dag.HasDirectedPath(setting, outcome) &&
        !ReachesOutcomeIn(dag, setting, z_outcomes)) {
      return true;
    }
  }
  // (iii) a collider that is not an outcome in Z and cannot reach one.
  for (std::size_t i = 1; i + 1 < path.nodes.size(); ++i) {
    if (!path.IsCollider(i)) continue;
    const NodeId m = path.nodes[i];
    if (!z_outcomes.Contains(m) && !ReachesOutcomeIn(dag, m, z_outcomes)) {
      return true;
    }
  }
  return false;
}

SeparationVerdict QSeparated(const Dag& dag, const CondQuery& query) {
  query.Validate(dag);
  for (const NodeSet* set : {&query.x, &query.y}) {
    for (NodeId v : *set) RequireObservedEndpoint(dag, v);
  }
  for (NodeId x : query.x) {
    for (NodeId y : query.y) {
      for (auto& path : EnumeratePaths(dag, x, y)) {
        if (!PathQInactive(dag, path, query.z)) {
          return {false, std::move(path)};
        }
      }
    }
  }
  return {};
}

int CriteriaReport::num_disagreements() const {
  return static_cast<int>(std::count_if(
      rows.begin(), rows.end(),
      [](const CriteriaRow& r) { return r.disagree(); }));
}

CriteriaReport CompareCriteria(const Dag& dag) {
  const NodeSet observed = dag.AllNodes().Minus(
      dag.NodesOfKind(NodeKind::kLatent));
  if (static_cast<int>(observed.size()) > kMaxCompareObservedNodes) {
    throw QueryError("compare_criteria supports at most " +
                     std::to_string(kMaxCompareObservedNodes) +
                     " setting/outcome nodes");
  }
  if (dag.num_nodes() > kMaxCompareNodes) {
    throw QueryError("compare_criteria supports at most " +
                     std::to_string(kMaxCompareNodes) + " nodes");
  }
  CriteriaReport report;
  const auto& ids = observed.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const NodeId x = ids[i];
      const NodeId y = ids[j];
      const auto rest = dag.AllNodes().Minus(NodeSet{x, y}).ids();
      for (unsigned mask = 0; mask < (1u << rest.size()); ++mask) {
        std::vector<NodeId> z;
        for (std::size_t k = 0; k < rest.size(); ++k) {
          if (mask & (1u << k)) z.push_back(rest[k]);
        }
        CondQuery q{NodeSet{x}, NodeSet{y}, NodeSet(std::move(z))};
        CriteriaRow row{x, y, q.z};
        row.d_separated = DSeparated(dag, q).separated;
        row.q_separated = QSeparated(dag, q).separated;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

namespace {

std::string JoinNames(const Dag& dag, const NodeSet& set,
                      std::string_view sep) {
  std::string out;
  for (NodeId id : set) {
    if (!out.empty()) out += sep;
    out += dag.name(id);
  }
  return out;
}

const char* YesNo(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string FormatCriteriaTable(const Dag& dag, const CriteriaReport& report) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"X", "Y", "Z", "d_sep", "q_sep", "disagree"});
  for (const auto& r : report.rows) {
    cells.push_back({dag.name(r.x), dag.name(r.y),
                     "{" + JoinNames(dag, r.z, ",") + "}",
                     YesNo(r.d_separated), YesNo(r.q_separated),
                     r.disagree() ? "*" : ""});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string FormatCriteriaCsv(const Dag& dag, const CriteriaReport& report) {
  std::string out = "X,Y,Z,d_sep,q_sep,disagree\n";
  for (const auto& r : report.rows) {
    out += dag.name(r.x) + "," + dag.name(r.y) + "," +
           JoinNames(dag, r.z, ";") + "," + (r.d_separated ? "1" : "0") +
           "," + (r.q_separated ? "1" : "0") + "," +
           (r.disagree() ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace causalnet
