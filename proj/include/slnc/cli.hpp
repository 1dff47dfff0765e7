#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slnc {

// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInput = 2,
    kExitFieldTooSmall = 3,
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slnc
