#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rechems::cli {

/// Runs one command line (without the program name). Returns the exit code;
/// diagnostics go to `err`, results to `out` or the files named by the options.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rechems::cli
