#include <algorithm>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/rng.hpp"
#include "defectlab/learn/cross_validation.hpp"

namespace defectlab::learn {

std::vector<int> stratified_folds(const Labels& labels, int k, std::uint64_t seed,
                                  Diagnostics* diags) {
    if (k < 2) throw ConfigError("stratified_folds: k must be >= 2");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[labels[i] ? 1 : 0].push_back(i);

    const std::size_t minority = std::min(by_class[0].size(), by_class[1].size());
    if (minority < 2)
        throw TooFewSamples("stratified_folds: minority class has " + std::to_string(minority) +
                            " samples");
    if (minority < static_cast<std::size_t>(k)) {
        if (diags)
            add_diag(*diags, Severity::Warning, "folds", 0,
                     "reducing k from " + std::to_string(k) + " to the minority count " +
                         std::to_string(minority));
        k = static_cast<int>(minority);
    }

    std::vector<int> fold_of(labels.size(), 0);
    for (int c = 0; c < 2; ++c) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
        rng.shuffle(by_class[c]);
        for (std::size_t i = 0; i < by_class[c].size(); ++i)
            fold_of[by_class[c][i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return fold_of;
}

FoldData split_fold(const data::Dataset& dataset, const std::vector<int>& fold_of, int fold) {
    FoldData out;
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
        const data::DatasetRow& row = dataset.rows[i];
        if (fold_of[i] == fold) {
            out.test_x.push_back(row.features);
            out.test_y.push_back(row.defective ? 1 : 0);
            out.test_rows.push_back(i);
        } else {
            out.train_x.push_back(row.features);
            out.train_y.push_back(row.defective ? 1 : 0);
        }
    }
    return out;
}

}  // namespace defectlab::learn
