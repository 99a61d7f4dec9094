#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecslab::cli {

// Dispatch one invocation; args excludes the program name.  Output goes to
// `out` (reports) and `err` (diagnostics); returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecslab::cli
