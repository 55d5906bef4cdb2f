#pragma once

#include <map>
#include <string>
#include <vector>

namespace defectlab::report {

struct FiveNum {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Quartiles by linear interpolation over the sorted sample.
FiveNum five_number_summary(std::vector<double> values);

/// Per-metric five-number summary of importance ranks across projects.
/// Input: one (metric -> rank) map per project.
std::map<std::string, FiveNum> aggregate_rankings(
    const std::vector<std::map<std::string, double>>& per_project_ranks);

}  // namespace defectlab::report
