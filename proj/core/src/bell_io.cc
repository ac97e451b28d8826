#include <array>
#include <cmath>
#include <string>

#include "causalnet/bell.h"
#include "causalnet/errors.h"
#include "io_util.h"

namespace causalnet {

Behavior ParseBehavior(std::string_view text) {
  std::array<double, 16> table{};
  std::array<bool, 16> seen{};
  int count = 0;
  int line_no = 0;
  for (std::string_view line : internal::Lines(text)) {
    ++line_no;
    auto tok = internal::Tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 5) {
      throw ParseError(line_no, "expected 'a b x y prob'");
    }
    int bits[4];
    for (int i = 0; i < 4; ++i) {
      auto v = internal::ParseInt(tok[i]);
      if (!v || (*v != 0 && *v != 1)) {
        throw ParseError(line_no, "outcomes and settings must be 0 or 1");
      }
      bits[i] = static_cast<int>(*v);
    }
    auto p = internal::ParseDouble(tok[4]);
    if (!p || !(*p >= 0.0) || !std::isfinite(*p)) {
      throw ParseError(line_no,
                       "invalid probability '" + std::string(tok[4]) + "'");
    }
    const std::size_t idx = Behavior::Index(bits[0], bits[1], bits[2], bits[3]);
    if (seen[idx]) throw ParseError(line_no, "entry listed twice");
    seen[idx] = true;
    table[idx] = *p;
    ++count;
  }
  if (count != 16) {
    throw ParseError(0, "expected 16 entries, found " + std::to_string(count));
  }
  try {
    return Behavior(table);
  } catch (const DistributionError& e) {
    throw ParseError(0, e.what());
  }
}

std::string SerializeBehavior(const Behavior& behavior) {
  std::string out;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          out += std::to_string(a) + " " + std::to_string(b) + " " +
                 std::to_string(x) + " " + std::to_string(y) + " " +
                 internal::ExactReal(behavior(a, b, x, y)) + "\n";
        }
      }
    }
  }
  return out;
}

Behavior LoadBehaviorFile(const std::string& path) {
  try {
    return ParseBehavior(internal::ReadFile(path));
  } catch (const ParseError& e) {
    throw e.InFile(path);
  }
}

}  // namespace causalnet
