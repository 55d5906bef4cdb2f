#include "defectlab/miner/labeler.hpp"

#include <algorithm>
#include <chrono>

#include "json.hpp"

#include "defectlab/common/text.hpp"

namespace defectlab::miner {

using javamodel::ProjectModel;

LabelResult label_defective_classes(int release_index, const ProjectModel& snapshot,
                                    const std::vector<FixChanges>& fixes) {
    LabelResult out;

    // Entities per file, for innermost-span lookup.
    std::map<std::string, std::vector<int>> by_file;
    for (int id = 0; id < snapshot.entity_count(); ++id)
        by_file[snapshot.entity(id).file_path].push_back(id);

    std::map<std::string, DefectLabel> labels;
    for (int id = 0; id < snapshot.entity_count(); ++id) {
        if (!snapshot.row_eligible(id)) continue;
        DefectLabel l;
        l.release = release_index;
        l.fqn = snapshot.entity(id).fqn;
        labels.emplace(l.fqn, std::move(l));
    }

    auto innermost_at = [&](const std::vector<int>& ids, int line) {
        int best = -1, best_span = 0;
        for (int id : ids) {
            const auto& e = snapshot.entity(id);
            if (line < e.start_line || line > e.end_line) continue;
            const int span = e.end_line - e.start_line;
            if (best < 0 || span < best_span) {
                best = id;
                best_span = span;
            }
        }
        return best;
    };

    for (const FixChanges& fix : fixes) {
        for (const auto& [file, lines] : fix.lines) {
            auto it = by_file.find(file);
            if (it == by_file.end()) {
                add_diag(out.diagnostics, Severity::Note, fix.commit, 0,
                         "fix touches file absent from snapshot: " + file);
                continue;
            }
            for (int line : lines) {
                int id = innermost_at(it->second, line);
                if (id < 0) continue;  // outside every class span (package, imports)
                while (id >= 0 && !snapshot.row_eligible(id))
                    id = snapshot.parents[static_cast<std::size_t>(id)];
                if (id < 0) continue;
                auto lit = labels.find(snapshot.entity(id).fqn);
                if (lit == labels.end()) continue;
                lit->second.defective = true;
                lit->second.provenance.push_back({fix.commit, file, line});
            }
        }
    }

    for (auto& [fqn, label] : labels) out.labels.push_back(std::move(label));
    return out;
}

std::optional<std::int64_t> parse_instant(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) return std::nullopt;
    bool digits_only = true;
    for (char c : s)
        if (c < '0' || c > '9') {
            digits_only = false;
            break;
        }
    if (digits_only) return std::stoll(s);

    int y, mo, d, h, mi, se;
    if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &se) == 6) {
        using namespace std::chrono;
        const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                                 day{static_cast<unsigned>(d)}};
        if (!ymd.ok()) return std::nullopt;
        return (sys_days{ymd} + hours{h} + minutes{mi} + seconds{se}).time_since_epoch() /
               seconds{1};
    }
    return std::nullopt;
}

std::map<std::string, std::int64_t> load_issue_times(const std::string& ndjson_content,
                                                     Diagnostics& diags) {
    std::map<std::string, std::int64_t> out;
    int line_no = 0;
    for (const std::string& line : split_lines(ndjson_content)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("created")) {
            add_diag(diags, Severity::Warning, "issues.ndjson", line_no,
                     "skipping malformed issue record");
            continue;
        }
        std::string id;
        if (j["id"].is_string())
            id = j["id"].get<std::string>();
        else if (j["id"].is_number_integer())
            id = std::to_string(j["id"].get<long long>());
        std::optional<std::int64_t> created;
        if (j["created"].is_string())
            created = parse_instant(j["created"].get<std::string>());
        else if (j["created"].is_number_integer())
            created = j["created"].get<std::int64_t>();
        if (id.empty() || !created) {
            add_diag(diags, Severity::Warning, "issues.ndjson", line_no,
                     "skipping issue record with unusable id/created");
            continue;
        }
        out[id] = *created;
    }
    return out;
}

}  // namespace defectlab::miner
