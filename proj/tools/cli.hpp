#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ihf::cli {

enum Status : int { kOk = 0, kValidationFailure = 1, kParseError = 2, kInternalError = 3 };

// Runs one command (arguments without the program name); reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ihf::cli
