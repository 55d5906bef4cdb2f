#include "defectlab/learn/cross_validation.hpp"

#include "defectlab/common/rng.hpp"

namespace defectlab::learn {

std::vector<ScoreReport> cross_validate(const data::Dataset& dataset, const ModelSpec& spec,
                                        int k, Diagnostics* diags) {
    Labels labels;
    labels.reserve(dataset.rows.size());
    for (const auto& row : dataset.rows) labels.push_back(row.defective ? 1 : 0);

    const std::vector<int> fold_of = stratified_folds(labels, k, spec.seed, diags);
    const int folds = *std::max_element(fold_of.begin(), fold_of.end()) + 1;

    std::vector<ScoreReport> reports;
    for (int f = 0; f < folds; ++f) {
        FoldData data = split_fold(dataset, fold_of, f);
        ModelSpec fold_spec = spec;
        fold_spec.seed = derive_seed(spec.seed, 0x0F01D000ULL + static_cast<std::uint64_t>(f));
        const auto model = fit(fold_spec, data.train_x, data.train_y, diags);
        reports.push_back(score(model->predict_proba(data.test_x), data.test_y, diags));
    }
    return reports;
}

}  // namespace defectlab::learn
