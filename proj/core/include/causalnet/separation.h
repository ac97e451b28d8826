#ifndef CAUSALNET_SEPARATION_H_
#define CAUSALNET_SEPARATION_H_

#include <optional>
#include <string>
#include <vector>

#include "causalnet/dag.h"

namespace causalnet {

// (X ⫫ Y | Z). X and Y nonempty; all three pairwise disjoint.
struct CondQuery {
  NodeSet x;
  NodeSet y;
  NodeSet z;

  // Throws QueryError on overlap, empty X/Y, or unknown ids.
  void Validate(const Dag& dag) const;
};

CondQuery MakeQuery(const Dag& dag, const std::vector<std::string>& x,
                    const std::vector<std::string>& y,
                    const std::vector<std::string>& z);

// A simple path traversed from nodes.front() to nodes.back(). forward[i] is
// true when the edge between nodes[i] and nodes[i+1] points towards
// nodes[i+1].
struct UndirectedPath {
  std::vector<NodeId> nodes;
  std::vector<bool> forward;

  int num_edges() const { return static_cast<int>(forward.size()); }
  // Interior node i (1 <= i < nodes.size()-1) is a collider when both
  // adjacent edges point into it.
  bool IsCollider(std::size_t i) const { return forward[i - 1] && !forward[i]; }

  friend bool operator==(const UndirectedPath&,
                         const UndirectedPath&) = default;
};

// Renders "X -> A <- Lambda -> B <- Y".
std::string FormatPath(const Dag& dag, const UndirectedPath& path);

// Checks that every consecutive pair is joined by an edge in the recorded
// direction and that no node repeats.
bool IsValidPath(const Dag& dag, const UndirectedPath& path);

struct SeparationVerdict {
  bool separated = true;
  std::optional<UndirectedPath> witness;  // an active path iff !separated
};

// All simple undirected paths from u to v, found by depth-first search
// that expands neighbours in declaration order.
std::vector<UndirectedPath> EnumeratePaths(const Dag& dag, NodeId u,
                                           NodeId v);

// Classical blocking: a chain or fork whose middle node is in Z, or a
// collider that is outside Z and has no descendant in Z.
bool PathDBlocked(const Dag& dag, const UndirectedPath& path,
                  const NodeSet& z);

// d-separation by a reachability sweep over (node, direction) states.
// The witness for a connected query is a simple active path.
SeparationVerdict DSeparated(const Dag& dag, const CondQuery& query);

// The same verdict computed straight from the path-wise definition.
SeparationVerdict DSeparatedByPaths(const Dag& dag, const CondQuery& query);

// Typed blocking rule for networks of settings and outcomes. Only members
// of Z with outcome kind take part in any clause. Throws QueryError when
// an endpoint is latent.
bool PathQInactive(const Dag& dag, const UndirectedPath& path,
                   const NodeSet& z);

// Throws QueryError when X or Y contains a latent node.
SeparationVerdict QSeparated(const Dag& dag, const CondQuery& query);

struct CriteriaRow {
  NodeId x;
  NodeId y;
  NodeSet z;
  bool d_separated = false;
  bool q_separated = false;
  bool disagree() const { return d_separated != q_separated; }
};

struct CriteriaReport {
  std::vector<CriteriaRow> rows;
  int num_disagreements() const;
};

inline constexpr int kMaxCompareObservedNodes = 12;
inline constexpr int kMaxCompareNodes = 16;

// Every pair x < y of setting/outcome nodes against every subset Z of the
// remaining nodes (latent nodes included). Rows are ordered by x, then y,
// then Z as a bitmask over the remaining nodes in declaration order.
// Throws QueryError above kMaxCompareObservedNodes setting/outcome nodes
// or kMaxCompareNodes nodes in total.
CriteriaReport CompareCriteria(const Dag& dag);

// Column-aligned text table.
std::string FormatCriteriaTable(const Dag& dag, const CriteriaReport& report);
// Header "X,Y,Z,d_sep,q_sep,disagree"; Z members joined by ';'.
std::string FormatCriteriaCsv(const Dag& dag, const CriteriaReport& report);

}  // namespace causalnet

#endif  // CAUSALNET_SEPARATION_H_
