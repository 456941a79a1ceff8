#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs the `aip` command line. args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace aip::cli
