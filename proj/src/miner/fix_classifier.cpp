#include "defectlab/miner/fix_classifier.hpp"

#include <algorithm>
#include <regex>

namespace defectlab::miner {

const std::vector<std::string>& default_fix_keywords() {
    static const std::vector<std::string> keywords = {"fix",    "fixes", "fixed", "bug",
                                                      "bugs",   "defect", "fault", "patch"};
    return keywords;
}

FixClassification classify_fix_commit(const std::string& message,
                                      const std::vector<std::string>& keywords) {
    FixClassification out;
    std::vector<std::pair<std::size_t, std::string>> hits;

    if (!keywords.empty()) {
        std::string pattern = "\\b(?:";
        for (std::size_t i = 0; i < keywords.size(); ++i) {
            if (i) pattern += '|';
            pattern += keywords[i];
        }
        pattern += ")\\b";
        const std::regex word_re(pattern, std::regex::icase);
        for (auto it = std::sregex_iterator(message.begin(), message.end(), word_re);
             it != std::sregex_iterator(); ++it)
            hits.emplace_back(static_cast<std::size_t>(it->position()), it->str());
    }

    static const std::regex issue_re("#\\d+\\b");
    for (auto it = std::sregex_iterator(message.begin(), message.end(), issue_re);
         it != std::sregex_iterator(); ++it) {
        hits.emplace_back(static_cast<std::size_t>(it->position()), it->str());
        out.issue_ids.push_back(it->str().substr(1));
    }

    std::sort(hits.begin(), hits.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [pos, text] : hits) out.evidence.push_back(std::move(text));
    out.is_fix = !out.evidence.empty();
    return out;
}

}  // namespace defectlab::miner
