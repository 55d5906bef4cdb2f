#include "defectlab/learn/random_forest.hpp"

#include <cmath>

#include "defectlab/common/errors.hpp"

namespace defectlab::learn {

RandomForest::RandomForest(const FeatureMatrix& X, const Labels& y, const ModelSpec& spec) {
    if (X.empty() || X.size() != y.size()) throw DataError("random forest: empty training set");
    if (spec.trees < 1) throw ConfigError("random forest: trees must be >= 1");
    const int p = static_cast<int>(X[0].size());
    const int per_split =
        spec.features_per_split > 0
            ? spec.features_per_split
            : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p))));

    DecisionTree::Params params;
    params.max_depth = spec.max_depth;
    params.min_samples_leaf = spec.min_samples_leaf;
    params.features_per_split = per_split;

    trees_.reserve(static_cast<std::size_t>(spec.trees));
    for (int t = 0; t < spec.trees; ++t) {
        Rng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(t)));
        if (spec.bootstrap) {
            FeatureMatrix bx;
            Labels by;
            bx.reserve(X.size());
            by.reserve(X.size());
            for (std::size_t i = 0; i < X.size(); ++i) {
                const std::size_t pick =
                    static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(X.size())));
                bx.push_back(X[pick]);
                by.push_back(y[pick]);
            }
            trees_.emplace_back(bx, by, params, &rng);
        } else {
            trees_.emplace_back(X, y, params, &rng);
        }
    }
}

std::vector<double> RandomForest::predict_proba(const FeatureMatrix& rows) const {
    std::vector<double> out(rows.size(), 0.0);
    for (const DecisionTree& tree : trees_) {
        for (std::size_t i = 0; i < rows.size(); ++i) out[i] += tree.predict_one(rows[i]);
    }
    for (double& v : out) v /= static_cast<double>(trees_.size());
    return out;
}

}  // namespace defectlab::learn
