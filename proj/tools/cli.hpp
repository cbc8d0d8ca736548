#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hqi::cli {

/// Exit codes shared by every command.
enum ExitCode { kOk = 0, kFailure = 1, kBadInput = 2, kConstraint = 3 };

/// Runs the command line tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hqi::cli
