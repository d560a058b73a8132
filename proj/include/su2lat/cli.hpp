#pragma once

#include <string>
#include <vector>

namespace su2lat::cli {

/// Entry point shared by the binary and the tests. Exit codes: 0 success,
/// 1 validation/usage error, 2 numerical failure.
int run(const std::vector<std::string> &args);
int run(int argc, char **argv);

} // namespace su2lat::cli
