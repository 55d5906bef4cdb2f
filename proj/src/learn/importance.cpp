#include "defectlab/learn/importance.hpp"

#include <algorithm>
#include <numeric>

#include "defectlab/common/rng.hpp"

namespace defectlab::learn {

std::vector<double> ranks_by_descending(const std::vector<double>& importance) {
    const std::size_t p = importance.size();
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (importance[a] != importance[b]) return importance[a] > importance[b];
        return a < b;
    });
    std::vector<double> ranks(p, 0.0);
    std::size_t i = 0;
    while (i < p) {
        std::size_t j = i;
        while (j + 1 < p && importance[order[j + 1]] == importance[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

ImportanceRanking permutation_importance(const data::Dataset& dataset, const ModelSpec& spec,
                                         const std::vector<std::string>& features, int k,
                                         int repeats, Diagnostics* diags, bool use_f_score) {
    const data::Dataset sub = data::select_features(dataset, features);
    const std::size_t p = features.size();

    Labels labels;
    for (const auto& row : sub.rows) labels.push_back(row.defective ? 1 : 0);
    const std::vector<int> fold_of = stratified_folds(labels, k, spec.seed, diags);
    const int folds = *std::max_element(fold_of.begin(), fold_of.end()) + 1;

    std::vector<double> total_drop(p, 0.0);
    long samples = 0;

    for (int f = 0; f < folds; ++f) {
        FoldData data = split_fold(sub, fold_of, f);
        ModelSpec fold_spec = spec;
        fold_spec.seed = derive_seed(spec.seed, 0x0F01D000ULL + static_cast<std::uint64_t>(f));
        const auto model = fit(fold_spec, data.train_x, data.train_y, diags);
        const auto measure = [&](const ScoreReport& r) {
            return use_f_score ? r.f_minority : r.auc_weighted;
        };
        const double baseline = measure(score(model->predict_proba(data.test_x), data.test_y, nullptr));

        const std::size_t m = data.test_x.size();
        for (std::size_t j = 0; j < p; ++j) {
            for (int rep = 0; rep < repeats; ++rep) {
                Rng rng(derive_seed(derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(f)),
                                                static_cast<std::uint64_t>(j)),
                                    static_cast<std::uint64_t>(rep)));
                std::vector<std::size_t> perm(m);
                std::iota(perm.begin(), perm.end(), 0);
                rng.shuffle(perm);

                FeatureMatrix shuffled = data.test_x;
                for (std::size_t i = 0; i < m; ++i) shuffled[i][j] = data.test_x[perm[i]][j];
                const double shuffled_score =
                    measure(score(model->predict_proba(shuffled), data.test_y, nullptr));
                total_drop[j] += baseline - shuffled_score;
            }
        }
        ++samples;
    }

    ImportanceRanking out;
    out.features = features;
    out.importance.resize(p);
    const double denom = static_cast<double>(samples) * static_cast<double>(repeats);
    for (std::size_t j = 0; j < p; ++j) out.importance[j] = total_drop[j] / denom;
    out.rank = ranks_by_descending(out.importance);
    return out;
}

}  // namespace defectlab::learn
