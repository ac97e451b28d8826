#include <string>
#include <unordered_set>
#include <vector>

#include "causalnet/dag.h"
#include "causalnet/errors.h"
#include "io_util.h"

namespace causalnet {

Dag ParseDag(std::string_view text) {
  std::vector<NodeSpec> nodes;
  std::vector<EdgeSpec> edges;
  std::unordered_set<std::string> names;
  int line_no = 0;
  for (std::string_view line : internal::Lines(text)) {
    ++line_no;
    auto tok = internal::Tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "node") {
      if (tok.size() != 3 && tok.size() != 4) {
        throw ParseError(line_no,
                         "expected 'node <name> [<kind>] <cardinality>'");
      }
      NodeSpec spec;
      spec.name = std::string(tok[1]);
      if (tok.size() == 4) {
        auto kind = tok[2];
        auto parsed = ParseNodeKind(kind);
        if (!parsed) {
          throw ParseError(line_no, "unknown node kind '" +
                                        std::string(kind) + "'");
        }
        spec.kind = *parsed;
      }
      auto card = internal::ParseInt(tok.back());
      if (!card || *card < 1 || *card > (1 << 20)) {
        throw ParseError(line_no, "invalid cardinality '" +
                                      std::string(tok.back()) + "'");
      }
      spec.cardinality = static_cast<int>(*card);
      if (!names.insert(spec.name).second) {
        throw ParseError(line_no, "duplicate node '" + spec.name + "'");
      }
      nodes.push_back(std::move(spec));
    } else if (tok[0] == "edge") {
      if (tok.size() != 4 || tok[2] != "->") {
        throw ParseError(line_no, "expected 'edge <name> -> <name>'");
      }
      for (auto endpoint : {tok[1], tok[3]}) {
        if (!names.contains(std::string(endpoint))) {
          throw ParseError(line_no, "unknown edge endpoint '" +
                                        std::string(endpoint) + "'");
        }
      }
      edges.push_back({std::string(tok[1]), std::string(tok[3])});
    } else {
      throw ParseError(line_no,
                       "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  try {
    return Dag::Build(std::move(nodes), std::move(edges));
  } catch (const GraphError& e) {
    throw ParseError(0, e.what());
  }
}

std::string SerializeDag(const Dag& dag) {
  std::string out;
  for (const NodeSpec& n : dag.nodes()) {
    out += "node " + n.name + " " + std::string(NodeKindName(n.kind)) + " " +
           std::to_string(n.cardinality) + "\n";
  }
  for (auto [tail, head] : dag.edges()) {
    out += "edge " + dag.name(tail) + " -> " + dag.name(head) + "\n";
  }
  return out;
}

Dag LoadDagFile(const std::string& path) {
  try {
    return ParseDag(internal::ReadFile(path));
  } catch (const ParseError& e) {
    throw e.InFile(path);
  }
}

}  // namespace causalnet
