#pragma once

#include "defectlab/learn/cross_validation.hpp"

namespace defectlab::learn {

struct ImportanceRanking {
    std::vector<std::string> features;
    std::vector<double> importance;  // mean drop in weighted AUC when shuffled
    std::vector<double> rank;        // 1 = most important; ties share the average
};

/// Cross-validated permutation feature importance: per fold, fit on the
/// training split and measure the held-out score drop when one test column is
/// shuffled, averaged over `repeats` seeded shuffles. The score is weighted
/// AUC by default; use_f_score switches to the minority F-measure.
ImportanceRanking permutation_importance(const data::Dataset& dataset, const ModelSpec& spec,
                                         const std::vector<std::string>& features, int k = 10,
                                         int repeats = 10, Diagnostics* diags = nullptr,
                                         bool use_f_score = false);

/// Descending-importance ranks with average ranks for ties.
std::vector<double> ranks_by_descending(const std::vector<double>& importance);

}  // namespace defectlab::learn
