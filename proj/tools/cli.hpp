#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cesforge::cli {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_usage = 2 };

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cesforge::cli
