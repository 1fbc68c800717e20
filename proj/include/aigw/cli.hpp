#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aigw::cli {

enum ExitCode : int { ok = 0, usage_error = 1, validation_error = 2, io_error = 3 };

/// Runs one invocation. `args` excludes the program name. Data goes to the
/// --output file, or to `out` when the output is "-".
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace aigw::cli
