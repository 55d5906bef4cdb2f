#pragma once

#include <string>
#include <vector>

#include "defectlab/dataset/dataset.hpp"

namespace defectlab::stats {

enum class VifFlag { Ok, Investigate, Severe, Degenerate };

struct VifEntry {
    std::string feature;
    double vif = 0.0;           // +infinity on perfect collinearity
    VifFlag flag = VifFlag::Ok; // Degenerate: zero-variance feature, no VIF
};

struct VifReport {
    std::vector<VifEntry> entries;
    double investigate_threshold = 2.5;
    double exclude_threshold = 10.0;
};

/// VIF_j = 1 / (1 - R²_j), regressing feature j on the remaining ones.
VifReport vif_table(const data::Dataset& dataset, const std::vector<std::string>& features,
                    double investigate_threshold = 2.5, double exclude_threshold = 10.0);

/// The nine metrics entering the importance analysis; RFC and WMC are
/// excluded up front, LOC serves as the baseline suite instead.
const std::vector<std::string>& importance_candidate_metrics();

struct Screening {
    std::vector<std::string> kept;
    std::vector<std::string> excluded;  // the a-priori removals present in the report
    bool project_excluded = false;      // any kept feature at/above the exclude threshold
};

Screening screen_features(const VifReport& report);

std::string vif_to_csv(const VifReport& report);

}  // namespace defectlab::stats
