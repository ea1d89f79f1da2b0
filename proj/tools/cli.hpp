#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyclone::cli {

enum ExitCode { kOk = 0, kInvalid = 1, kUsage = 2 };

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyclone::cli
