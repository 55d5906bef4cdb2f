#pragma once

#include <filesystem>
#include <string>

namespace defectlab {

std::string read_file(const std::filesystem::path& path);

/// Writes content to path via a temp file in the same directory followed by a
/// rename, so readers never observe a partially written stage output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace defectlab
