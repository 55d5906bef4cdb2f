#include "defectlab/javamodel/source_tree.hpp"

#include <algorithm>

#include "defectlab/common/fsio.hpp"
#include "defectlab/javamodel/parser.hpp"

namespace fs = std::filesystem;

namespace defectlab::javamodel {

namespace {

bool valid_utf8(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        int extra;
        if (c < 0x80)
            extra = 0;
        else if ((c >> 5) == 0x6)
            extra = 1;
        else if ((c >> 4) == 0xE)
            extra = 2;
        else if ((c >> 3) == 0x1E)
            extra = 3;
        else
            return false;
        if (i + static_cast<std::size_t>(extra) >= s.size() && extra > 0) return false;
        for (int k = 1; k <= extra; ++k)
            if ((static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]) >> 6) != 0x2)
                return false;
        i += static_cast<std::size_t>(extra) + 1;
    }
    return true;
}

}  // namespace

std::vector<ParsedFile> parse_sources(std::vector<std::pair<std::string, std::string>> sources,
                                      Diagnostics& diags) {
    std::vector<ParsedFile> files;
    files.reserve(sources.size());
    for (auto& [path, content] : sources) {
        if (!valid_utf8(content))
            add_diag(diags, Severity::Warning, path, 0,
                     "file is not valid UTF-8; parsing bytes as-is");
        files.push_back(parse_compilation_unit(std::move(content), path));
    }
    return files;
}

std::vector<ParsedFile> parse_source_tree(const fs::path& root, Diagnostics& diags) {
    std::vector<std::pair<std::string, std::string>> sources;
    if (!fs::exists(root)) {
        add_diag(diags, Severity::Error, root.string(), 0, "source tree does not exist");
        return {};
    }
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".java") continue;
        sources.emplace_back(fs::relative(entry.path(), root).generic_string(),
                             read_file(entry.path()));
    }
    std::sort(sources.begin(), sources.end());
    return parse_sources(std::move(sources), diags);
}

}  // namespace defectlab::javamodel
