#pragma once

#include <string>
#include <vector>

namespace defectlab {

struct CommandResult {
    int exit_code = -1;
    std::string output;  // captured stdout
};

std::string shell_quote(const std::string& arg);

/// Runs argv through /bin/sh, captures stdout. stderr goes to the calling
/// process; stdin optionally redirected from a file.
CommandResult run_command(const std::vector<std::string>& argv,
                          const std::string& stdin_file = "");

}  // namespace defectlab
