#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elimdeg::cli {

enum ExitCode { kOk = 0, kInternal = 1, kInputError = 2, kResourceError = 3, kDisagreement = 4 };

// Runs one command line (without the program name) and writes JSON to out.
// Diagnostics that are not part of the JSON go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elimdeg::cli
