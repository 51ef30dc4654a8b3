#pragma once

// Command-line front end. Subcommands: evolve, tau-orbit, agr-scan, reduce,
// solve-check. Exit status: 0 success, 1 domain error, 2 usage error.

#include <ostream>
#include <string>
#include <vector>

namespace dp2ff {

/// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dp2ff
