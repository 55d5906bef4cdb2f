#pragma once

#include "defectlab/dataset/dataset.hpp"
#include "defectlab/learn/scoring.hpp"

namespace defectlab::learn {

/// Fold id per row. Per-class counts across folds differ by at most one.
/// When the minority class has fewer than k members, k shrinks to that count
/// (with a diagnostic); a minority of fewer than 2 throws TooFewSamples.
std::vector<int> stratified_folds(const Labels& labels, int k, std::uint64_t seed,
                                  Diagnostics* diags = nullptr);

struct FoldData {
    FeatureMatrix train_x, test_x;
    Labels train_y, test_y;
    std::vector<std::size_t> test_rows;  // row indices into the dataset
};

FoldData split_fold(const data::Dataset& dataset, const std::vector<int>& fold_of, int fold);

/// One ScoreReport per fold: fit on the other k-1 folds, score the held-out
/// one. Models are seeded per fold from the run seed.
std::vector<ScoreReport> cross_validate(const data::Dataset& dataset, const ModelSpec& spec,
                                        int k = 10, Diagnostics* diags = nullptr);

}  // namespace defectlab::learn
