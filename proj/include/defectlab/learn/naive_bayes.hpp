#pragma once

#include "defectlab/learn/model.hpp"

namespace defectlab::learn {

/// Gaussian Naive Bayes with per-class feature means/variances. Variances are
/// floored at 1e-9 times the largest overall feature variance. Training on a
/// single class degrades to predicting that class (with a diagnostic).
class GaussianNaiveBayes : public Classifier {
public:
    GaussianNaiveBayes(const FeatureMatrix& X, const Labels& y, Diagnostics* diags);

    std::vector<double> predict_proba(const FeatureMatrix& rows) const override;

private:
    int arity_ = 0;
    bool single_class_ = false;
    int sole_class_ = 0;
    double log_prior_[2] = {0.0, 0.0};
    std::vector<double> mean_[2];
    std::vector<double> var_[2];
};

}  // namespace defectlab::learn
