#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace defectlab::miner {

struct FileDiff {
    std::string old_path;
    std::string new_path;
    bool is_rename = false;
    bool is_new_file = false;
    bool is_deleted_file = false;
    bool is_binary = false;
    std::set<int> pre_image_lines;  // parent-side lines deleted/changed; for
                                    // pure additions the anchor line
};

std::vector<FileDiff> parse_unified_diff(const std::string& diff_text);

/// Parent-side changed lines of every modified .java file, keyed by the
/// parent-side path (renames follow the old name; new and binary files drop
/// out because they have no pre-image).
std::map<std::string, std::set<int>> java_changed_lines(const std::vector<FileDiff>& diffs);

}  // namespace defectlab::miner
