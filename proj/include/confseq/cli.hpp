#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace confseq {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kFail = 1, kInputError = 2 };

/// Runs one command line (args excludes the program name). Reports go to
/// out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace confseq
