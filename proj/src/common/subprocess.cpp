#include "defectlab/common/subprocess.hpp"

#include <cstdio>
#include <cstdlib>

#include "defectlab/common/errors.hpp"

namespace defectlab {

std::string shell_quote(const std::string& arg) {
    std::string out = "'";
    for (char c : arg) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    out += "'";
    return out;
}

CommandResult run_command(const std::vector<std::string>& argv, const std::string& stdin_file) {
    std::string cmd;
    for (const auto& a : argv) {
        if (!cmd.empty()) cmd += ' ';
        cmd += shell_quote(a);
    }
    if (!stdin_file.empty()) cmd += " < " + shell_quote(stdin_file);

    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw Error("failed to spawn: " + cmd);

    CommandResult result;
    char buf[1 << 16];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
    const int status = ::pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace defectlab
