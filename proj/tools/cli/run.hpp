#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pencillab::cli {

/// Executes one invocation (arguments without the program name). Writes to
/// `out` and returns the exit code: 0 on success, 1 on domain errors, 2 on
/// usage errors. Errors are reported as {"error": code, "detail": text}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pencillab::cli
