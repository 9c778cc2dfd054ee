#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coupled::cli {

/// Runs one command line (without the program name) and returns the exit code:
/// 0 on success, 1 for runtime errors, 2 for usage errors. Results go to `out`
/// or to the --out file; error records go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coupled::cli
