#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entconc::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kViolations = 1,
    kParseError = 2,
    kNotEntangled = 3,
    kNoConvergence = 4,
    kInvalidState = 5,
    kNumericalError = 6,
};

// Runs one command. `args` excludes the program name. Reports go to `out`
// (or to the --output file), diagnostics to `err`. A state file named "-" is
// read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace entconc::cli
