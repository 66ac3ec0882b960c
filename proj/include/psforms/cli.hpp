#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psforms::cli {

/// Exit codes of the command line tool.
enum Exit : int { ok = 0, check_failed = 1, input_error = 2 };

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` as JSON, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psforms::cli
