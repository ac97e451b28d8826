#include <cmath>
#include <string>
#include <vector>

#include "causalnet/distribution.h"
#include "causalnet/errors.h"
#include "io_util.h"

namespace causalnet {

JointTable ParseJointTable(std::string_view text) {
  std::vector<Variable> vars;
  std::vector<double> probs;
  std::vector<char> assigned;
  std::size_t size = 0;
  bool have_header = false;
  int line_no = 0;
  for (std::string_view line : internal::Lines(text)) {
    ++line_no;
    auto tok = internal::Tokens(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok[0] != "vars" || tok.size() < 2) {
        throw ParseError(line_no, "expected header 'vars <name:card> ...'");
      }
      size = 1;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        auto colon = tok[i].rfind(':');
        if (colon == std::string_view::npos || colon == 0) {
          throw ParseError(line_no, "expected '<name>:<cardinality>', got '" +
                                        std::string(tok[i]) + "'");
        }
        auto card = internal::ParseInt(tok[i].substr(colon + 1));
        if (!card || *card < 1 ||
            static_cast<std::size_t>(*card) > kMaxJointEntries / size) {
          throw ParseError(line_no, "invalid cardinality in '" +
                                        std::string(tok[i]) + "'");
        }
        size *= static_cast<std::size_t>(*card);
        vars.push_back({std::string(tok[i].substr(0, colon)),
                        static_cast<int>(*card)});
      }
      probs.assign(size, 0.0);
      assigned.assign(size, 0);
      have_header = true;
      continue;
    }
    if (tok.size() != vars.size() + 1) {
      throw ParseError(line_no, "expected " + std::to_string(vars.size()) +
                                    " values and a probability");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto v = internal::ParseInt(tok[i]);
      if (!v || *v < 0 || *v >= vars[i].cardinality) {
        throw ParseError(line_no, "value '" + std::string(tok[i]) +
                                      "' out of range for '" + vars[i].name +
                                      "'");
      }
      flat = flat * vars[i].cardinality + static_cast<std::size_t>(*v);
    }
    auto prob = internal::ParseDouble(tok.back());
    if (!prob || !(*prob >= 0.0) || !std::isfinite(*prob)) {
      throw ParseError(line_no,
                       "invalid probability '" + std::string(tok.back()) + "'");
    }
    if (assigned[flat]++) {
      throw ParseError(line_no, "assignment listed twice");
    }
    probs[flat] = *prob;
  }
  if (!have_header) throw ParseError(0, "missing 'vars' header");
  try {
    return JointTable(std::move(vars), std::move(probs));
  } catch (const DistributionError& e) {
    throw ParseError(0, e.what());
  }
}

std::string SerializeJointTable(const JointTable& p) {
  std::string out = "vars";
  for (const auto& v : p.variables()) {
    out += " " + v.name + ":" + std::to_string(v.cardinality);
  }
  out += "\n";
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    if (p[flat] == 0.0) continue;
    for (int value : p.Assignment(flat)) out += std::to_string(value) + " ";
    out += internal::ExactReal(p[flat]) + "\n";
  }
  return out;
}

JointTable LoadJointTableFile(const std::string& path) {
  try {
    return ParseJointTable(internal::ReadFile(path));
  } catch (const ParseError& e) {
    throw e.InFile(path);
  }
}

}  // namespace causalnet
