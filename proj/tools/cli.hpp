#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polypell::cli {

enum ExitCode : int {
    kSolved = 0,
    kNotWithinBounds = 1,
    kInputError = 2,
    kDegenerate = 3,
    kVerificationFailure = 4,
};

/// One invocation of the command-line tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polypell::cli
