#pragma once

#include <string>
#include <vector>

#include "defectlab/common/diagnostics.hpp"
#include "defectlab/metrics/metrics.hpp"

namespace defectlab::data {

struct DatasetRow {
    std::string project;
    int release = 0;
    std::string fqn;
    std::vector<double> features;  // canonical 12-metric order, or a selected subset
    bool defective = false;
};

struct Dataset {
    std::vector<DatasetRow> rows;
    std::vector<std::string> feature_names;

    std::size_t arity() const { return feature_names.size(); }
};

/// Joins one release's metric vectors with its defect labels. Classes with
/// metrics but no label default to not defective; labels without metrics are
/// dropped with a diagnostic.
Dataset assemble(const std::vector<metrics::MetricVector>& vectors,
                 const std::vector<std::pair<std::string, bool>>& labels,
                 const std::string& project, int release, Diagnostics& diags);

/// Concatenates datasets with identical feature names.
Dataset concat(const std::vector<Dataset>& parts);

/// Removes rows identical in (features, label), keeping first occurrences.
Dataset deduplicate(const Dataset& input);

/// Drops negatives at random until the class balance reaches `ratio`
/// negatives per positive. Off by default in the pipeline.
Dataset undersample(const Dataset& input, double ratio, std::uint64_t seed);

/// Projection onto a feature subset (names must exist).
Dataset select_features(const Dataset& input, const std::vector<std::string>& names);

std::string write_csv(const Dataset& dataset);
Dataset read_csv(const std::string& content, const std::string& source_name);

}  // namespace defectlab::data
