#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace argconf::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kInputError = 2,
    kAssessmentError = 3,
    kUsageError = 4,
};

/// Runs the command line `args` (without the program name). All output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace argconf::cli
