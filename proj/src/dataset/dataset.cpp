#include "defectlab/dataset/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/rng.hpp"
#include "defectlab/common/text.hpp"

namespace defectlab::data {

Dataset assemble(const std::vector<metrics::MetricVector>& vectors,
                 const std::vector<std::pair<std::string, bool>>& labels,
                 const std::string& project, int release, Diagnostics& diags) {
    Dataset out;
    out.feature_names = metrics::metric_names();

    std::map<std::string, bool> label_map;
    for (const auto& [fqn, defective] : labels) label_map[fqn] = defective;

    std::set<std::string> seen;
    for (const auto& v : vectors) {
        DatasetRow row;
        row.project = project;
        row.release = release;
        row.fqn = v.fqn;
        row.features = v.as_features();
        auto it = label_map.find(v.fqn);
        row.defective = it != label_map.end() && it->second;
        out.rows.push_back(std::move(row));
        seen.insert(v.fqn);
    }
    for (const auto& [fqn, defective] : labels) {
        if (!seen.count(fqn))
            add_diag(diags, Severity::Warning, project, 0,
                     "label for unknown class dropped: " + fqn + " (release " +
                         std::to_string(release) + ")");
    }
    return out;
}

Dataset concat(const std::vector<Dataset>& parts) {
    Dataset out;
    for (const Dataset& p : parts) {
        if (out.feature_names.empty()) {
            out.feature_names = p.feature_names;
        } else if (out.feature_names != p.feature_names) {
            throw ArityMismatch("datasets disagree on feature names");
        }
        out.rows.insert(out.rows.end(), p.rows.begin(), p.rows.end());
    }
    return out;
}

Dataset deduplicate(const Dataset& input) {
    Dataset out;
    out.feature_names = input.feature_names;
    std::set<std::pair<std::vector<double>, bool>> seen;
    for (const DatasetRow& row : input.rows)
        if (seen.emplace(row.features, row.defective).second) out.rows.push_back(row);
    return out;
}

Dataset undersample(const Dataset& input, double ratio, std::uint64_t seed) {
    std::size_t positives = 0;
    for (const auto& r : input.rows) positives += r.defective ? 1 : 0;
    std::vector<std::size_t> negative_idx;
    for (std::size_t i = 0; i < input.rows.size(); ++i)
        if (!input.rows[i].defective) negative_idx.push_back(i);

    const std::size_t keep_negatives = std::min(
        negative_idx.size(),
        static_cast<std::size_t>(std::llround(ratio * static_cast<double>(positives))));
    Rng rng(derive_seed(seed, 0x5eed));
    rng.shuffle(negative_idx);
    negative_idx.resize(keep_negatives);
    std::set<std::size_t> keep(negative_idx.begin(), negative_idx.end());

    Dataset out;
    out.feature_names = input.feature_names;
    for (std::size_t i = 0; i < input.rows.size(); ++i)
        if (input.rows[i].defective || keep.count(i)) out.rows.push_back(input.rows[i]);
    return out;
}

Dataset select_features(const Dataset& input, const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    for (const std::string& n : names) {
        auto it = std::find(input.feature_names.begin(), input.feature_names.end(), n);
        if (it == input.feature_names.end())
            throw ArityMismatch("unknown feature: " + n);
        idx.push_back(static_cast<std::size_t>(it - input.feature_names.begin()));
    }
    Dataset out;
    out.feature_names = names;
    out.rows.reserve(input.rows.size());
    for (const DatasetRow& row : input.rows) {
        DatasetRow r;
        r.project = row.project;
        r.release = row.release;
        r.fqn = row.fqn;
        r.defective = row.defective;
        for (std::size_t k : idx) r.features.push_back(row.features[k]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

namespace {

std::string expected_header(const std::vector<std::string>& feature_names) {
    std::string h = "project,release,fqn";
    for (const auto& n : feature_names) h += "," + n;
    h += ",defective";
    return h;
}

/// Features are integral counts except CD; CD keeps 6 decimals.
std::string format_feature(const std::string& name, double v) {
    if (name == "CD") return format_double(v, 6);
    if (v == std::floor(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<long long>(v));
    return format_double(v, 6);
}

}  // namespace

std::string write_csv(const Dataset& dataset) {
    std::string out = expected_header(dataset.feature_names) + "\n";
    for (const DatasetRow& row : dataset.rows) {
        out += csv_quote(row.project);
        out += "," + std::to_string(row.release);
        out += "," + csv_quote(row.fqn);
        for (std::size_t k = 0; k < row.features.size(); ++k)
            out += "," + format_feature(dataset.feature_names[k], row.features[k]);
        out += row.defective ? ",1\n" : ",0\n";
    }
    return out;
}

namespace {

double parse_number(const std::string& text, const std::string& source, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw MalformedCsv(source, line, "not a number: " + text);
    }
}

}  // namespace

Dataset read_csv(const std::string& content, const std::string& source_name) {
    const auto lines = split_lines(content);
    if (lines.empty()) throw MalformedCsv(source_name, 1, "empty dataset file");

    std::vector<std::string> header;
    if (!csv_split(lines[0], header) || header.size() < 5 || header.front() != "project" ||
        header[1] != "release" || header[2] != "fqn" || header.back() != "defective")
        throw MalformedCsv(source_name, 1, "unexpected dataset header");

    Dataset out;
    out.feature_names.assign(header.begin() + 3, header.end() - 1);
    if (out.feature_names.size() == metrics::metric_names().size() &&
        out.feature_names != metrics::metric_names())
        throw MalformedCsv(source_name, 1, "feature columns differ from the canonical order");
    if (out.feature_names.size() > metrics::metric_names().size())
        throw MalformedCsv(source_name, 1, "more feature columns than known metrics");

    std::vector<std::string> fields;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        if (!csv_split(lines[li], fields) || fields.size() != header.size())
            throw MalformedCsv(source_name, static_cast<int>(li + 1), "bad dataset row");
        DatasetRow row;
        row.project = fields[0];
        row.release = static_cast<int>(
            parse_number(fields[1], source_name, static_cast<int>(li + 1)));
        row.fqn = fields[2];
        for (std::size_t k = 0; k < out.feature_names.size(); ++k) {
            const double v = parse_number(fields[3 + k], source_name, static_cast<int>(li + 1));
            if (!std::isfinite(v) || v < 0)
                throw MalformedCsv(source_name, static_cast<int>(li + 1),
                                   "feature values must be finite and non-negative");
            if (out.feature_names[k] == "CD" && v > 1.0)
                throw MalformedCsv(source_name, static_cast<int>(li + 1),
                                   "CD must lie in [0,1]");
            row.features.push_back(v);
        }
        const std::string& label = fields.back();
        if (label != "0" && label != "1")
            throw MalformedCsv(source_name, static_cast<int>(li + 1), "defective must be 0 or 1");
        row.defective = label == "1";
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace defectlab::data
