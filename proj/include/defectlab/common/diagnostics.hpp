#pragma once

#include <string>
#include <vector>

namespace defectlab {

enum class Severity { Note, Warning, Error };

/// One recoverable problem found while processing an input. Fatal conditions
/// are thrown as exceptions instead (see errors.hpp).
struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string source;  // file path, commit id, or logical input name
    int line = 0;        // 0 when not line-addressable
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline void add_diag(Diagnostics& sink, Severity sev, std::string source, int line,
                     std::string message) {
    sink.push_back(Diagnostic{sev, std::move(source), line, std::move(message)});
}

inline bool has_errors(const Diagnostics& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

}  // namespace defectlab
