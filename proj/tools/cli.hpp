#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mono::cli {

/// Runs one sub-command. `args` excludes the program name. Results go to
/// `out`, progress and diagnostics to `err`.
/// Exit codes: 0 success, 1 verification failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mono::cli
