#ifndef CAUSALNET_TOOLS_CLI_H_
#define CAUSALNET_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace causalnet::cli {

inline constexpr int kExitPositive = 0;  // holds / separated / local / pass
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;     // usage or input error

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace causalnet::cli

#endif  // CAUSALNET_TOOLS_CLI_H_
