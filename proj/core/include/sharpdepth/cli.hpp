#pragma once

#include <string>
#include <vector>

namespace sharpdepth {

/// Command-line entry point. Exit codes: 0 success, 2 usage error,
/// 3 data error (missing/malformed inputs), 4 numerical failure.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

}  // namespace sharpdepth
