#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace confpara::cli {

enum ExitCode : int { ok = 0, failure = 1, distinguished = 2, cap_exceeded = 3, input_error = 4 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confpara::cli
