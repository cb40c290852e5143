#pragma once

#include <string>
#include <vector>

namespace cpb::cli {

/// Runs the command-line tool on the given arguments (program name excluded).
/// Returns 0 on success, 1 on a validation/usage error, 2 when a
/// verification suite fails.
int run(const std::vector<std::string>& args);

} // namespace cpb::cli
