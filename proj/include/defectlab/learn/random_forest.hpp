#pragma once

#include "defectlab/learn/decision_tree.hpp"

namespace defectlab::learn {

/// Bagged CART trees with per-split feature sampling (ceil(sqrt(p)) by
/// default). Tree t draws its randomness from derive_seed(seed, t), so the
/// forest is reproducible and trees could be grown concurrently.
class RandomForest : public Classifier {
public:
    RandomForest(const FeatureMatrix& X, const Labels& y, const ModelSpec& spec);

    std::vector<double> predict_proba(const FeatureMatrix& rows) const override;

private:
    std::vector<DecisionTree> trees_;
};

}  // namespace defectlab::learn
