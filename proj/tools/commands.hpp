#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ustr::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kThreshold = 3,
    kCapacity = 4,
    kMismatch = 5,
};

/// Runs the `ustr` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ustr::cli
