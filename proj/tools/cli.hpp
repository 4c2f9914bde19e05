#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boolpres::cli {

inline constexpr const char* kVersion = "0.1.0";

// Runs one command line (without the program name). Returns the exit code:
// 0 success, 1 semantic failure, 2 unparsable input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boolpres::cli
