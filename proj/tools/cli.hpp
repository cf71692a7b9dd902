#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evo::cli {

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or to --out when given), diagnostics and configuration echoes to `err`.
/// Returns 0 on success, 1 on error, 2 when the result is numerically
/// ambiguous or inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands `key = value` lines into flags. `#` starts a comment. `true` and
/// `false` values toggle flags.
std::vector<std::string> config_to_args(const std::string& text);

}  // namespace evo::cli
