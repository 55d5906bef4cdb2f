#pragma once

#include <string>
#include <vector>

#include "defectlab/javamodel/model.hpp"

namespace defectlab::metrics {

inline constexpr int kMetricCount = 12;

/// Canonical feature order used across datasets, models and reports.
inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {"LOC", "WMC",   "DIT", "NOC",
                                                   "CBO", "RFC",   "LCOM5", "NPA",
                                                   "NPM", "NLE",   "CBOI",  "CD"};
    return names;
}

struct MetricVector {
    std::string fqn;
    long loc = 0;
    long wmc = 0;
    long dit = 0;
    long noc = 0;
    long cbo = 0;
    long rfc = 0;
    long lcom5 = 0;
    long npa = 0;
    long npm = 0;
    long nle = 0;
    long cboi = 0;
    double cd = 0.0;

    std::vector<double> as_features() const {
        return {static_cast<double>(loc), static_cast<double>(wmc), static_cast<double>(dit),
                static_cast<double>(noc), static_cast<double>(cbo), static_cast<double>(rfc),
                static_cast<double>(lcom5), static_cast<double>(npa), static_cast<double>(npm),
                static_cast<double>(nle), static_cast<double>(cboi), cd};
    }
};

struct SizeDocs {
    long loc = 0;
    double cd = 0.0;
    long npa = 0;
    long npm = 0;
};
struct Complexity {
    long wmc = 0;
    long nle = 0;
};
struct Inheritance {
    long dit = 0;
    long noc = 0;
};
struct Coupling {
    long cbo = 0;
    long cboi = 0;
    long rfc = 0;
};

SizeDocs size_and_docs(const javamodel::ProjectModel& model, int id);
Complexity complexity(const javamodel::ProjectModel& model, int id);
Inheritance inheritance(const javamodel::ProjectModel& model, int id);
Coupling coupling(const javamodel::ProjectModel& model, int id);
long cohesion(const javamodel::ProjectModel& model, int id);

MetricVector metric_vector(const javamodel::ProjectModel& model, int id);

/// Vectors for every row-eligible class, ordered by fully qualified name.
std::vector<MetricVector> compute_all(const javamodel::ProjectModel& model);

/// metrics.csv: header + one row per class, CD with 6 decimals, LF endings.
std::string to_csv(const std::vector<MetricVector>& vectors);
std::vector<MetricVector> from_csv(const std::string& content, const std::string& source_name);

}  // namespace defectlab::metrics
