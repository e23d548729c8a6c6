#pragma once

#include <string>
#include <vector>

namespace nodal::cli {

// Executes one CLI invocation (argv without the program name).
// Exit codes: 0 all verdicts pass, 1 a mathematical verdict failed or was
// indeterminate, 2 input/usage error.
int run_command(const std::vector<std::string>& args);

}  // namespace nodal::cli
