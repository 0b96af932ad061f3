#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clusteraf::cli {

enum ExitCode : int { Ok = 0, Other = 1, Parse = 2, Validation = 3, Budget = 4, Degenerate = 5 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clusteraf::cli
