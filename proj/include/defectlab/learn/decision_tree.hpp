#pragma once

#include "defectlab/common/rng.hpp"
#include "defectlab/learn/model.hpp"

namespace defectlab::learn {

/// Binary CART with Gini impurity and midpoint thresholds. Ties in the split
/// search break toward the smallest feature index, then smallest threshold,
/// making training order-independent and reproducible. An impure node splits
/// even at zero Gini gain as long as a valid split exists, so training
/// accuracy is 1.0 whenever rows with equal features carry equal labels
/// (unbounded depth, min_samples_leaf = 1).
class DecisionTree : public Classifier {
public:
    struct Params {
        int max_depth = -1;
        int min_samples_leaf = 1;
        int features_per_split = 0;  // 0 or >= p: consider all features
    };

    /// rng is consumed only when features_per_split restricts the candidate
    /// set (random forest trees); plain trees never touch it.
    DecisionTree(const FeatureMatrix& X, const Labels& y, const Params& params, Rng* rng);

    std::vector<double> predict_proba(const FeatureMatrix& rows) const override;
    double predict_one(const std::vector<double>& row) const;

private:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double p_defective = 0.0;  // Laplace-smoothed (d+1)/(n+2)
    };
    std::vector<Node> nodes_;

    int grow(const FeatureMatrix& X, const Labels& y, std::vector<int>& rows, int depth,
             const Params& params, Rng* rng);
};

}  // namespace defectlab::learn
