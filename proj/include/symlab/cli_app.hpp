#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace symlab {

/// Parses arguments (without the program name) and runs the requested
/// command, writing the report to `out` and diagnostics to `err`.
/// Exit codes: 0 success, 2 invalid configuration or flags, 3 infeasible
/// symmetrizer problem, 4 solver inconsistency.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace symlab
