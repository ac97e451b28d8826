#include "causalnet/dag.h"

#include <gtest/gtest.h>

#include "causalnet/bell.h"
#include "causalnet/errors.h"
#include "support/oracles.h"

namespace causalnet {
namespace {

constexpr char kBellFile[] = R"(# Bell scenario
node X setting 2
node Y setting 2
node A outcome 2
node B outcome 2
node Lambda latent 16
edge X -> A
edge Lambda -> A
edge Lambda -> B
edge Y -> B
)";

std::vector<std::string> Names(const Dag& g, const NodeSet& s) {
  return g.Names(s);
}

TEST(ParseDagTest, MinimalFile) {
  const Dag g = ParseDag("node X setting 2\nnode A outcome 2\nedge X -> A\n");
  EXPECT_EQ(g.num_nodes(), 2);
  EXPECT_EQ(g.num_edges(), 1);
  EXPECT_EQ(g.kind(g.Id("X")), NodeKind::kSetting);
  EXPECT_TRUE(g.HasEdge(g.Id("X"), g.Id("A")));
}

TEST(ParseDagTest, TwoCycleIsRejectedWithItsNodes) {
  try {
    ParseDag(
        "node X setting 2\nnode Y setting 2\nedge X -> Y\nedge Y -> X\n");
    FAIL() << "expected a cycle error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("cycle detected: X -> Y -> X"),
              std::string::npos)
        << e.what();
  }
}

TEST(ParseDagTest, BellFile) {
  const Dag g = ParseDag(kBellFile);
  EXPECT_EQ(g.num_nodes(), 5);
  EXPECT_EQ(g.num_edges(), 4);
  EXPECT_EQ(g.cardinality(g.Id("Lambda")), 16);
  EXPECT_EQ(SerializeDag(g), SerializeDag(BellDag()));
}

TEST(ParseDagTest, KindDefaultsToOutcome) {
  const Dag g = ParseDag("node V 3   # trailing comment\n\n");
  EXPECT_EQ(g.kind(g.Id("V")), NodeKind::kOutcome);
  EXPECT_EQ(g.cardinality(g.Id("V")), 3);
}

TEST(ParseDagTest, ErrorsCarryLineNumbers) {
  struct Case {
    const char* text;
    int line;
    const char* fragment;
  };
  const Case cases[] = {
      {"node X setting 2\nnode X outcome 2\n", 2, "duplicate node"},
      {"node X setting 2\nedge X -> Q\n", 2, "unknown edge endpoint 'Q'"},
      {"node X setting 2\n\nedge X Q\n", 3, "expected 'edge"},
      {"node X sideways 2\n", 1, "unknown node kind"},
      {"node X setting 0\n", 1, "invalid cardinality"},
      {"# c\nvertex X\n", 2, "unknown directive"},
  };
  for (const auto& c : cases) {
    try {
      ParseDag(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
      EXPECT_NE(std::string(e.what()).find(c.fragment), std::string::npos)
          << e.what();
    }
  }
}

TEST(ParseDagTest, StructuralErrors) {
  EXPECT_THROW(ParseDag("node X 2\nedge X -> X\n"), ParseError);
  EXPECT_THROW(ParseDag("node X 2\nnode Y 2\nedge X -> Y\nedge X -> Y\n"),
               ParseError);
  // Latent nodes are exogenous.
  EXPECT_THROW(ParseDag("node X 2\nnode L latent 2\nedge X -> L\n"),
               ParseError);
  EXPECT_THROW(Dag::Build({{"a,b", NodeKind::kOutcome, 2}}, {}), GraphError);
}

TEST(DagTest, BellParentsAncestorsDescendants) {
  const Dag g = BellDag();
  using V = std::vector<std::string>;
  EXPECT_EQ(Names(g, g.Parents(g.Id("A"))), (V{"X", "Lambda"}));
  EXPECT_TRUE(g.Parents(g.Id("X")).empty());
  EXPECT_EQ(Names(g, g.Ancestors(g.Id("A"))), (V{"X", "Lambda"}));
  EXPECT_TRUE(g.Ancestors(g.Id("Lambda")).empty());
  EXPECT_EQ(Names(g, g.Descendants(g.Id("Lambda"))), (V{"A", "B"}));
  EXPECT_TRUE(g.Descendants(g.Id("A")).empty());
  EXPECT_THROW(g.Id("Q"), GraphError);
  EXPECT_THROW(g.Parents(NodeId{9}), GraphError);
}

TEST(DagTest, SingleNodeAndChain) {
  const Dag single = ParseDag("node S 2\n");
  EXPECT_TRUE(single.Parents(NodeId{0}).empty());

  const Dag chain = ParseDag("node P 2\nnode Q 2\nnode R 2\nedge P -> Q\nedge Q -> R\n");
  using V = std::vector<std::string>;
  EXPECT_EQ(Names(chain, chain.Ancestors(chain.Id("R"))), (V{"P", "Q"}));
  EXPECT_EQ(Names(chain, chain.Descendants(chain.Id("P"))), (V{"Q", "R"}));
  const auto order = chain.TopologicalOrder();
  ASSERT_EQ(order.size(), 3u);
  EXPECT_EQ(chain.name(order[0]), "P");
  EXPECT_EQ(chain.name(order[2]), "R");
}

TEST(DagTest, TopologicalOrderBell) {
  const Dag g = BellDag();
  const auto order = g.TopologicalOrder();
  std::vector<int> pos(g.num_nodes());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i].value] = static_cast<int>(i);
  for (const char* root : {"X", "Y", "Lambda"}) {
    for (const char* sink : {"A", "B"}) {
      EXPECT_LT(pos[g.Id(root).value], pos[g.Id(sink).value]);
    }
  }
  std::vector<std::string> names;
  for (NodeId id : order) names.push_back(g.name(id));
  EXPECT_EQ(names, (std::vector<std::string>{"X", "Y", "Lambda", "A", "B"}));
  EXPECT_TRUE(Dag().TopologicalOrder().empty());
}

TEST(DagTest, ClosureDeclarationOrderIndependentOfEdgeOrder) {
  const Dag a = ParseDag("node P 2\nnode Q 2\nnode R 2\nedge Q -> R\nedge P -> Q\n");
  EXPECT_EQ(a.Names(a.Ancestors(a.Id("R"))),
            (std::vector<std::string>{"P", "Q"}));
  // Serializer keeps edge declaration order.
  EXPECT_EQ(SerializeDag(a),
            "node P outcome 2\nnode Q outcome 2\nnode R outcome 2\n"
            "edge Q -> R\nedge P -> Q\n");
}

// Structural invariants against a Warshall closure on every labeled DAG
// with up to four nodes.
TEST(DagPropertyTest, InvariantsOnAllSmallDags) {
  int graphs = 0;
  for (int n = 1; n <= 4; ++n) {
    testing::ForEachLabeledDag(n, [&](const testing::Adjacency& adj) {
      ++graphs;
      const Dag g = testing::DagFromAdjacency(adj);
      const auto reach = testing::Reachability(adj);
      for (int i = 0; i < n; ++i) {
        const NodeId v{i};
        const NodeSet anc = g.Ancestors(v);
        const NodeSet desc = g.Descendants(v);
        EXPECT_FALSE(anc.Contains(v));
        EXPECT_FALSE(desc.Contains(v));
        EXPECT_FALSE(anc.Intersects(desc));
        for (NodeId p : g.Parents(v)) EXPECT_TRUE(anc.Contains(p));
        for (int j = 0; j < n; ++j) {
          EXPECT_EQ(anc.Contains(NodeId{j}), static_cast<bool>(reach[j][i]));
          EXPECT_EQ(desc.Contains(NodeId{j}), static_cast<bool>(reach[i][j]));
          // w in descendants(v) iff v in ancestors(w)
          EXPECT_EQ(desc.Contains(NodeId{j}),
                    g.Ancestors(NodeId{j}).Contains(v));
        }
      }
      const auto order = g.TopologicalOrder();
      ASSERT_EQ(static_cast<int>(order.size()), n);
      std::vector<int> pos(n, -1);
      for (int k = 0; k < n; ++k) {
        ASSERT_EQ(pos[order[k].value], -1);
        pos[order[k].value] = k;
      }
      for (auto [t, h] : g.edges()) {
        EXPECT_LT(pos[t.value], pos[h.value]);
        EXPECT_TRUE(g.Ancestors(h).Contains(t));
        EXPECT_TRUE(g.Descendants(t).Contains(h));
      }
      // parse . serialize . parse is the identity on structure.
      const std::string text = SerializeDag(g);
      const Dag again = ParseDag(text);
      EXPECT_EQ(SerializeDag(again), text);
      EXPECT_EQ(again.edges(), g.edges());
    });
  }
  EXPECT_EQ(graphs, 1 + 3 + 25 + 543);  // labeled DAG counts
}

TEST(NodeSetTest, SetAlgebra) {
  NodeSet a{NodeId{3}, NodeId{1}, NodeId{1}};
  EXPECT_EQ(a.size(), 2u);
  NodeSet b{NodeId{1}, NodeId{2}};
  EXPECT_EQ(a.Union(b), (NodeSet{NodeId{1}, NodeId{2}, NodeId{3}}));
  EXPECT_EQ(a.Intersection(b), (NodeSet{NodeId{1}}));
  EXPECT_EQ(a.Minus(b), (NodeSet{NodeId{3}}));
  EXPECT_TRUE(a.Intersects(b));
  a.Insert(NodeId{0});
  EXPECT_EQ(a.ids().front(), NodeId{0});
}

}  // namespace
}  // namespace causalnet
