#include "defectlab/learn/decision_tree.hpp"

#include <algorithm>
#include <cmath>

#include "defectlab/common/errors.hpp"

namespace defectlab::learn {

namespace {

double gini(long positives, long total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(positives) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

}  // namespace

DecisionTree::DecisionTree(const FeatureMatrix& X, const Labels& y, const Params& params,
                           Rng* rng) {
    if (X.empty() || X.size() != y.size()) throw DataError("decision tree: empty training set");
    std::vector<int> rows(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) rows[static_cast<std::size_t>(i)] = static_cast<int>(i);
    grow(X, y, rows, 0, params, rng);
}

int DecisionTree::grow(const FeatureMatrix& X, const Labels& y, std::vector<int>& rows,
                       int depth, const Params& params, Rng* rng) {
    const long n = static_cast<long>(rows.size());
    long positives = 0;
    for (int r : rows) positives += y[static_cast<std::size_t>(r)];

    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[static_cast<std::size_t>(node_index)].p_defective =
        (static_cast<double>(positives) + 1.0) / (static_cast<double>(n) + 2.0);

    const bool pure = positives == 0 || positives == n;
    const bool depth_capped = params.max_depth >= 0 && depth >= params.max_depth;
    if (pure || depth_capped || n < 2 * params.min_samples_leaf) return node_index;

    const int p = static_cast<int>(X[0].size());
    std::vector<int> candidates;
    if (params.features_per_split <= 0 || params.features_per_split >= p) {
        candidates.resize(static_cast<std::size_t>(p));
        for (int f = 0; f < p; ++f) candidates[static_cast<std::size_t>(f)] = f;
    } else {
        // Sample distinct features, then sort so tie-breaking stays by index.
        std::vector<int> all(static_cast<std::size_t>(p));
        for (int f = 0; f < p; ++f) all[static_cast<std::size_t>(f)] = f;
        for (int k = 0; k < params.features_per_split; ++k) {
            const std::size_t j =
                static_cast<std::size_t>(k) +
                static_cast<std::size_t>(rng->below(static_cast<std::uint64_t>(p - k)));
            std::swap(all[static_cast<std::size_t>(k)], all[j]);
        }
        candidates.assign(all.begin(), all.begin() + params.features_per_split);
        std::sort(candidates.begin(), candidates.end());
    }

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_gini = std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, int>> values(rows.size());
    for (int f : candidates) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const int r = rows[i];
            values[i] = {X[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)],
                         y[static_cast<std::size_t>(r)]};
        }
        std::sort(values.begin(), values.end());

        long left_n = 0, left_pos = 0;
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            ++left_n;
            left_pos += values[i].second;
            if (values[i].first == values[i + 1].first) continue;  // not a boundary
            const long right_n = n - left_n;
            if (left_n < params.min_samples_leaf || right_n < params.min_samples_leaf) continue;
            const long right_pos = positives - left_pos;
            const double weighted =
                (static_cast<double>(left_n) * gini(left_pos, left_n) +
                 static_cast<double>(right_n) * gini(right_pos, right_n)) /
                static_cast<double>(n);
            if (weighted < best_gini - 1e-12) {
                best_gini = weighted;
                best_feature = f;
                best_threshold = (values[i].first + values[i + 1].first) / 2.0;
            }
        }
    }

    if (best_feature < 0) return node_index;  // no valid split: leaf

    std::vector<int> left_rows, right_rows;
    for (int r : rows) {
        if (X[static_cast<std::size_t>(r)][static_cast<std::size_t>(best_feature)] <=
            best_threshold)
            left_rows.push_back(r);
        else
            right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int left = grow(X, y, left_rows, depth + 1, params, rng);
    const int right = grow(X, y, right_rows, depth + 1, params, rng);
    nodes_[static_cast<std::size_t>(node_index)].feature = best_feature;
    nodes_[static_cast<std::size_t>(node_index)].threshold = best_threshold;
    nodes_[static_cast<std::size_t>(node_index)].left = left;
    nodes_[static_cast<std::size_t>(node_index)].right = right;
    return node_index;
}

double DecisionTree::predict_one(const std::vector<double>& row) const {
    int node = 0;
    while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
        const Node& nd = nodes_[static_cast<std::size_t>(node)];
        node = row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes_[static_cast<std::size_t>(node)].p_defective;
}

std::vector<double> DecisionTree::predict_proba(const FeatureMatrix& rows) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(predict_one(row));
    return out;
}

}  // namespace defectlab::learn
