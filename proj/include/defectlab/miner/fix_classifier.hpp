#pragma once

#include <string>
#include <vector>

namespace defectlab::miner {

struct FixClassification {
    bool is_fix = false;
    std::vector<std::string> evidence;   // matched substrings, in message order
    std::vector<std::string> issue_ids;  // digits of every #NNN reference
};

/// The default defect-fixing keyword heuristic; overridable via config.
const std::vector<std::string>& default_fix_keywords();

/// Case-insensitive whole-word keyword match, plus #<digits> issue references.
FixClassification classify_fix_commit(const std::string& message,
                                      const std::vector<std::string>& keywords =
                                          default_fix_keywords());

}  // namespace defectlab::miner
