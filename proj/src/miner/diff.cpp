#include "defectlab/miner/diff.hpp"

#include "defectlab/common/text.hpp"

namespace defectlab::miner {

namespace {

/// Strips the a/ or b/ prefix and minimal C-style quoting from a diff path.
std::string clean_path(std::string path) {
    if (!path.empty() && path.front() == '"' && path.back() == '"' && path.size() >= 2) {
        std::string out;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (path[i] == '\\' && i + 2 < path.size()) {
                ++i;
                switch (path[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '\\': out += '\\'; break;
                    case '"': out += '"'; break;
                    default: out += path[i];
                }
            } else {
                out += path[i];
            }
        }
        path = out;
    }
    if (path.size() >= 2 && (path[0] == 'a' || path[0] == 'b') && path[1] == '/')
        return path.substr(2);
    return path;
}

bool parse_hunk_header(const std::string& line, long* old_start, long* old_count) {
    // @@ -a[,b] +c[,d] @@
    if (line.rfind("@@ -", 0) != 0) return false;
    std::size_t i = 4;
    long a = 0;
    bool any = false;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
        a = a * 10 + (line[i] - '0');
        ++i;
        any = true;
    }
    if (!any) return false;
    long b = 1;
    if (i < line.size() && line[i] == ',') {
        ++i;
        b = 0;
        while (i < line.size() && line[i] >= '0' && line[i] <= '9') {
            b = b * 10 + (line[i] - '0');
            ++i;
        }
    }
    *old_start = a;
    *old_count = b;
    return true;
}

}  // namespace

std::vector<FileDiff> parse_unified_diff(const std::string& diff_text) {
    std::vector<FileDiff> out;
    FileDiff* cur = nullptr;
    for (const std::string& line : split_lines(diff_text)) {
        if (line.rfind("diff --git ", 0) == 0) {
            out.emplace_back();
            cur = &out.back();
            continue;
        }
        if (!cur) continue;
        if (line.rfind("rename from ", 0) == 0) {
            cur->is_rename = true;
            cur->old_path = clean_path(line.substr(12));
            continue;
        }
        if (line.rfind("rename to ", 0) == 0) {
            cur->new_path = clean_path(line.substr(10));
            continue;
        }
        if (line.rfind("new file mode", 0) == 0) {
            cur->is_new_file = true;
            continue;
        }
        if (line.rfind("deleted file mode", 0) == 0) {
            cur->is_deleted_file = true;
            continue;
        }
        if (line.rfind("Binary files ", 0) == 0 || line.rfind("GIT binary patch", 0) == 0) {
            cur->is_binary = true;
            continue;
        }
        if (line.rfind("--- ", 0) == 0) {
            const std::string p = line.substr(4);
            if (p != "/dev/null" && cur->old_path.empty()) cur->old_path = clean_path(p);
            continue;
        }
        if (line.rfind("+++ ", 0) == 0) {
            const std::string p = line.substr(4);
            if (p != "/dev/null" && cur->new_path.empty()) cur->new_path = clean_path(p);
            continue;
        }
        long old_start, old_count;
        if (parse_hunk_header(line, &old_start, &old_count)) {
            if (old_count > 0) {
                for (long l = old_start; l < old_start + old_count; ++l)
                    cur->pre_image_lines.insert(static_cast<int>(l));
            } else {
                // Pure addition: anchor at the pre-image insertion point.
                cur->pre_image_lines.insert(static_cast<int>(old_start > 0 ? old_start : 1));
            }
        }
    }
    return out;
}

std::map<std::string, std::set<int>> java_changed_lines(const std::vector<FileDiff>& diffs) {
    std::map<std::string, std::set<int>> out;
    for (const FileDiff& d : diffs) {
        if (d.is_binary || d.is_new_file) continue;
        const std::string& path = d.old_path;
        if (path.size() < 5 || path.substr(path.size() - 5) != ".java") continue;
        if (d.pre_image_lines.empty()) continue;
        out[path].insert(d.pre_image_lines.begin(), d.pre_image_lines.end());
    }
    return out;
}

}  // namespace defectlab::miner
