#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "defectlab/common/diagnostics.hpp"
#include "defectlab/javamodel/entity.hpp"

namespace defectlab::javamodel {

/// Parses in-memory sources (path, content), in the given order.
/// Non-UTF-8 content is tolerated byte-wise and recorded as a diagnostic.
std::vector<ParsedFile> parse_sources(
    std::vector<std::pair<std::string, std::string>> sources, Diagnostics& diags);

/// Recursively parses every .java file under root (paths relative to root,
/// sorted for determinism).
std::vector<ParsedFile> parse_source_tree(const std::filesystem::path& root, Diagnostics& diags);

}  // namespace defectlab::javamodel
