#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mgs::cli {

// Exit status of every command.
enum Status { Ok = 0, VerifiedFalse = 1, InputFailure = 2, InternalFailure = 3 };

// Runs one command line (without the program name). Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mgs::cli
