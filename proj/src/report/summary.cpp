#include "defectlab/report/summary.hpp"

#include <algorithm>

#include "defectlab/common/errors.hpp"

namespace defectlab::report {

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double idx = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

FiveNum five_number_summary(std::vector<double> values) {
    if (values.empty()) throw DataError("five_number_summary: empty sample");
    std::sort(values.begin(), values.end());
    FiveNum s;
    s.min = values.front();
    s.q1 = quantile_sorted(values, 0.25);
    s.median = quantile_sorted(values, 0.5);
    s.q3 = quantile_sorted(values, 0.75);
    s.max = values.back();
    return s;
}

std::map<std::string, FiveNum> aggregate_rankings(
    const std::vector<std::map<std::string, double>>& per_project_ranks) {
    if (per_project_ranks.empty()) throw DataError("aggregate_rankings: no projects");
    std::map<std::string, std::vector<double>> pooled;
    for (const auto& project : per_project_ranks)
        for (const auto& [metric, rank] : project) pooled[metric].push_back(rank);
    std::map<std::string, FiveNum> out;
    for (const auto& [metric, ranks] : pooled) out[metric] = five_number_summary(ranks);
    return out;
}

}  // namespace defectlab::report
