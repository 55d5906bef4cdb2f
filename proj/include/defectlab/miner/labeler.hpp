#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "defectlab/common/diagnostics.hpp"
#include "defectlab/javamodel/model.hpp"

namespace defectlab::miner {

struct Provenance {
    std::string commit;
    std::string file;
    int line = 0;
};

struct DefectLabel {
    int release = 0;
    std::string fqn;
    bool defective = false;
    std::vector<Provenance> provenance;
};

/// One fix commit's parent-side changed lines, per file.
struct FixChanges {
    std::string commit;
    std::map<std::string, std::set<int>> lines;
};

struct LabelResult {
    std::vector<DefectLabel> labels;  // one per row-eligible class, fqn order
    Diagnostics diagnostics;          // unmatched files and the like
};

/// Marks a class defective when a changed pre-image line of an assigned fix
/// commit falls inside its snapshot span. Lines inside anonymous or local
/// classes are attributed to the nearest row-eligible ancestor.
LabelResult label_defective_classes(int release_index, const javamodel::ProjectModel& snapshot,
                                    const std::vector<FixChanges>& fixes);

/// issues.ndjson entries: {"id": ..., "created": ...}. `created` accepts ISO
/// 8601 UTC (2020-01-02T03:04:05Z) or raw epoch seconds.
std::map<std::string, std::int64_t> load_issue_times(const std::string& ndjson_content,
                                                     Diagnostics& diags);

std::optional<std::int64_t> parse_instant(const std::string& text);

}  // namespace defectlab::miner
