#include "defectlab/learn/naive_bayes.hpp"

#include <cmath>

#include "defectlab/common/errors.hpp"

namespace defectlab::learn {

GaussianNaiveBayes::GaussianNaiveBayes(const FeatureMatrix& X, const Labels& y,
                                       Diagnostics* diags) {
    if (X.empty() || X.size() != y.size()) throw DataError("naive bayes: empty training set");
    arity_ = static_cast<int>(X[0].size());
    const std::size_t n = X.size();

    long counts[2] = {0, 0};
    for (int label : y) ++counts[label ? 1 : 0];
    if (counts[0] == 0 || counts[1] == 0) {
        single_class_ = true;
        sole_class_ = counts[1] > 0 ? 1 : 0;
        if (diags)
            add_diag(*diags, Severity::Warning, "naive-bayes", 0,
                     "training data has a single class; predicting it everywhere");
        return;
    }

    for (int c = 0; c < 2; ++c) {
        log_prior_[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));
        mean_[c].assign(static_cast<std::size_t>(arity_), 0.0);
        var_[c].assign(static_cast<std::size_t>(arity_), 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const int c = y[i] ? 1 : 0;
        for (int j = 0; j < arity_; ++j)
            mean_[c][static_cast<std::size_t>(j)] += X[i][static_cast<std::size_t>(j)];
    }
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < arity_; ++j)
            mean_[c][static_cast<std::size_t>(j)] /= static_cast<double>(counts[c]);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = y[i] ? 1 : 0;
        for (int j = 0; j < arity_; ++j) {
            const double d =
                X[i][static_cast<std::size_t>(j)] - mean_[c][static_cast<std::size_t>(j)];
            var_[c][static_cast<std::size_t>(j)] += d * d;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < arity_; ++j)
            var_[c][static_cast<std::size_t>(j)] /= static_cast<double>(counts[c]);

    // Overall variance per feature, for the floor.
    double max_var = 0.0;
    for (int j = 0; j < arity_; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += X[i][static_cast<std::size_t>(j)];
        m /= static_cast<double>(n);
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = X[i][static_cast<std::size_t>(j)] - m;
            v += d * d;
        }
        max_var = std::max(max_var, v / static_cast<double>(n));
    }
    const double floor = max_var > 0.0 ? 1e-9 * max_var : 1e-30;
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < arity_; ++j)
            var_[c][static_cast<std::size_t>(j)] =
                std::max(var_[c][static_cast<std::size_t>(j)], floor);
}

std::vector<double> GaussianNaiveBayes::predict_proba(const FeatureMatrix& rows) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != arity_ && !single_class_)
            throw ArityMismatch("naive bayes: feature arity mismatch");
        if (single_class_) {
            out.push_back(sole_class_ == 1 ? 1.0 : 0.0);
            continue;
        }
        double log_post[2];
        for (int c = 0; c < 2; ++c) {
            double lp = log_prior_[c];
            for (int j = 0; j < arity_; ++j) {
                const double v = var_[c][static_cast<std::size_t>(j)];
                const double d =
                    row[static_cast<std::size_t>(j)] - mean_[c][static_cast<std::size_t>(j)];
                lp += -0.5 * std::log(2.0 * M_PI * v) - d * d / (2.0 * v);
            }
            log_post[c] = lp;
        }
        const double m = std::max(log_post[0], log_post[1]);
        const double e0 = std::exp(log_post[0] - m);
        const double e1 = std::exp(log_post[1] - m);
        out.push_back(e1 / (e0 + e1));
    }
    return out;
}

}  // namespace defectlab::learn
