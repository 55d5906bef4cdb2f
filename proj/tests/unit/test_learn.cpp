#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/rng.hpp"
#include "defectlab/dataset/dataset.hpp"
#include "defectlab/learn/cross_validation.hpp"
#include "defectlab/learn/decision_tree.hpp"
#include "defectlab/learn/importance.hpp"
#include "defectlab/learn/naive_bayes.hpp"
#include "defectlab/learn/random_forest.hpp"
#include "defectlab/report/summary.hpp"

using namespace defectlab;
using namespace defectlab::learn;

namespace {

data::Dataset make_dataset(const FeatureMatrix& X, const Labels& y,
                           std::vector<std::string> names = {}) {
    data::Dataset ds;
    if (names.empty())
        for (std::size_t j = 0; j < X[0].size(); ++j) names.push_back("f" + std::to_string(j));
    ds.feature_names = std::move(names);
    for (std::size_t i = 0; i < X.size(); ++i) {
        data::DatasetRow row;
        row.project = "synthetic";
        row.fqn = "r" + std::to_string(i);
        row.features = X[i];
        row.defective = y[i] != 0;
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

double accuracy(const Classifier& model, const FeatureMatrix& X, const Labels& y) {
    const auto probs = model.predict_proba(X);
    long hits = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if ((probs[i] >= 0.5 ? 1 : 0) == y[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(y.size());
}

/// Two 6-sigma-separated Gaussian blobs (means +-3, unit variance).
void gaussian_blobs(std::uint64_t seed, int n, FeatureMatrix* X, Labels* y) {
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        const int label = i % 2;
        const double center = label ? 3.0 : -3.0;
        X->push_back({center + rng.normal(), center + rng.normal()});
        y->push_back(label);
    }
}

const FeatureMatrix kXorX = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
const Labels kXorY = {0, 1, 1, 0};

}  // namespace

TEST_CASE("stratified folds: balance and determinism") {
    SUBCASE("100 rows, 10 positives, k=10 -> 1 positive and 9 negatives per fold") {
        Labels labels(100, 0);
        for (int i = 0; i < 10; ++i) labels[static_cast<std::size_t>(i * 10)] = 1;
        const auto folds = stratified_folds(labels, 10, 42);
        std::vector<int> pos(10, 0), total(10, 0);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            ++total[static_cast<std::size_t>(folds[i])];
            pos[static_cast<std::size_t>(folds[i])] += labels[i];
        }
        for (int f = 0; f < 10; ++f) {
            CHECK(pos[static_cast<std::size_t>(f)] == 1);
            CHECK(total[static_cast<std::size_t>(f)] == 10);
        }
    }

    SUBCASE("95 rows, 10 positives: fold sizes 9 or 10, one positive each") {
        Labels labels(95, 0);
        for (int i = 0; i < 10; ++i) labels[static_cast<std::size_t>(i)] = 1;
        const auto folds = stratified_folds(labels, 10, 1);
        std::vector<int> pos(10, 0), total(10, 0);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            ++total[static_cast<std::size_t>(folds[i])];
            pos[static_cast<std::size_t>(folds[i])] += labels[i];
        }
        for (int f = 0; f < 10; ++f) {
            CHECK(pos[static_cast<std::size_t>(f)] == 1);
            CHECK((total[static_cast<std::size_t>(f)] == 9 ||
                   total[static_cast<std::size_t>(f)] == 10));
        }
    }

    SUBCASE("same inputs, same seed -> identical; different seed -> different") {
        Labels labels(60, 0);
        for (int i = 0; i < 20; ++i) labels[static_cast<std::size_t>(i)] = 1;
        CHECK(stratified_folds(labels, 10, 5) == stratified_folds(labels, 10, 5));
        CHECK(stratified_folds(labels, 10, 5) != stratified_folds(labels, 10, 6));
    }

    SUBCASE("k shrinks to the minority count with a diagnostic") {
        Labels labels(30, 0);
        for (int i = 0; i < 4; ++i) labels[static_cast<std::size_t>(i)] = 1;
        Diagnostics diags;
        const auto folds = stratified_folds(labels, 10, 9, &diags);
        CHECK(*std::max_element(folds.begin(), folds.end()) == 3);
        CHECK(diags.size() == 1);
    }

    SUBCASE("minority below two is an error") {
        Labels labels(10, 0);
        labels[0] = 1;
        CHECK_THROWS_AS(stratified_folds(labels, 10, 0), TooFewSamples);
    }
}

TEST_CASE("decision tree: leaves and Laplace smoothing") {
    // one-row training set: single leaf, probability (1+1)/(1+2)
    DecisionTree::Params params;
    DecisionTree one({{1.0}}, {1}, params, nullptr);
    CHECK(one.predict_one({1.0}) == doctest::Approx(2.0 / 3.0));

    // pure defective leaf of size 8 -> probability 9/10
    FeatureMatrix X8(8, {0.0});
    Labels y8(8, 1);
    DecisionTree eight(X8, y8, params, nullptr);
    CHECK(eight.predict_one({0.0}) == doctest::Approx(0.9));
}

TEST_CASE("decision tree solves XOR at depth 2; NB cannot") {
    DecisionTree::Params params;
    DecisionTree dt(kXorX, kXorY, params, nullptr);
    CHECK(accuracy(dt, kXorX, kXorY) == doctest::Approx(1.0));

    Diagnostics diags;
    GaussianNaiveBayes nb(kXorX, kXorY, &diags);
    CHECK(accuracy(nb, kXorX, kXorY) <= 0.75);
}

TEST_CASE("decision tree training accuracy is 1.0 on distinct consistent rows") {
    Rng rng(99);
    FeatureMatrix X;
    Labels y;
    for (int i = 0; i < 80; ++i) {
        X.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
        y.push_back(rng.uniform() < 0.4 ? 1 : 0);
    }
    DecisionTree::Params params;  // unbounded depth, min leaf 1
    DecisionTree dt(X, y, params, nullptr);
    CHECK(accuracy(dt, X, y) == doctest::Approx(1.0));
}

TEST_CASE("naive bayes separates 6-sigma blobs") {
    FeatureMatrix X;
    Labels y;
    gaussian_blobs(3, 200, &X, &y);
    Diagnostics diags;
    GaussianNaiveBayes nb(X, y, &diags);
    CHECK(accuracy(nb, X, y) >= 0.95);

    // symmetric classes: a point equidistant from both means scores 0.5
    FeatureMatrix Xs = {{-1, 0}, {1, 0}};
    Labels ys = {0, 1};
    GaussianNaiveBayes sym(Xs, ys, &diags);
    CHECK(sym.predict_proba({{0, 0}})[0] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("naive bayes single-class training predicts the sole class") {
    Diagnostics diags;
    GaussianNaiveBayes nb({{1.0}, {2.0}}, {1, 1}, &diags);
    CHECK(nb.predict_proba({{5.0}})[0] == doctest::Approx(1.0));
    CHECK(diags.size() == 1);
}

TEST_CASE("random forest with one tree, all features, no bootstrap equals the tree") {
    Rng rng(12);
    FeatureMatrix X;
    Labels y;
    for (int i = 0; i < 60; ++i) {
        X.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
        y.push_back(X.back()[1] > 0.2 ? 1 : 0);
    }
    ModelSpec spec = ModelSpec::rf(777, 1);
    spec.bootstrap = false;
    spec.features_per_split = 4;
    RandomForest rf(X, y, spec);
    DecisionTree::Params params;
    DecisionTree dt(X, y, params, nullptr);

    FeatureMatrix probe;
    for (int i = 0; i < 50; ++i)
        probe.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
    CHECK(rf.predict_proba(probe) == dt.predict_proba(probe));  // bitwise equal
}

TEST_CASE("random forest averages tree probabilities") {
    // reported probability is the mean of the per-tree leaf probabilities
    FeatureMatrix X;
    Labels y;
    gaussian_blobs(8, 80, &X, &y);
    ModelSpec spec = ModelSpec::rf(5, 7);
    RandomForest rf(X, y, spec);
    const auto probs = rf.predict_proba(X);
    for (double p : probs) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    CHECK(accuracy(rf, X, y) >= 0.9);
}

TEST_CASE("scoring: perfect, all-negative, brute-force AUC") {
    auto perfect = score({0.9, 0.9, 0.1, 0.1}, {1, 1, 0, 0});
    CHECK(perfect.precision == doctest::Approx(1.0));
    CHECK(perfect.recall == doctest::Approx(1.0));
    CHECK(perfect.f_minority == doctest::Approx(1.0));
    CHECK(perfect.auc_weighted == doctest::Approx(1.0));
    CHECK(perfect.tp + perfect.fp + perfect.tn + perfect.fn == 4);

    auto allneg = score({0.1, 0.2, 0.3, 0.4}, {1, 0, 1, 0});
    CHECK(allneg.f_minority == doctest::Approx(0.0));

    // 3 of 4 positive-negative pairs correctly ordered
    auto mixed = score({0.9, 0.8, 0.3, 0.1}, {1, 0, 1, 0});
    CHECK(mixed.auc_weighted == doctest::Approx(0.75));
}

TEST_CASE("AUC is invariant under strictly monotone transforms") {
    Rng rng(21);
    std::vector<double> probs;
    Labels truth;
    for (int i = 0; i < 40; ++i) {
        probs.push_back(rng.uniform());
        truth.push_back(rng.uniform() < 0.3 ? 1 : 0);
    }
    const double base = rank_auc(probs, truth, 1);
    std::vector<double> squashed;
    for (double p : probs) squashed.push_back(std::tanh(3.0 * p) * 0.5 + 0.5);
    CHECK(rank_auc(squashed, truth, 1) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("no positive truth reports recall 0 with a diagnostic") {
    Diagnostics diags;
    auto r = score({0.9, 0.2}, {0, 0}, &diags);
    CHECK(r.recall == doctest::Approx(0.0));
    CHECK(r.degenerate_truth);
    CHECK(!diags.empty());
}

TEST_CASE("cross validation: separable dataset and determinism") {
    Rng rng(31);
    FeatureMatrix X;
    Labels y;
    for (int i = 0; i < 120; ++i) {
        const double loc = 20.0 + 180.0 * rng.uniform();
        X.push_back({loc, rng.normal()});
        y.push_back(loc > 100.0 ? 1 : 0);
    }
    auto ds = make_dataset(X, y);

    const auto reports = cross_validate(ds, ModelSpec::dt(7), 10);
    double mean_f = 0.0;
    for (const auto& r : reports) mean_f += r.f_minority;
    mean_f /= static_cast<double>(reports.size());
    CHECK(mean_f >= 0.95);

    const auto again = cross_validate(ds, ModelSpec::dt(7), 10);
    REQUIRE(again.size() == reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(again[i].f_minority == reports[i].f_minority);
        CHECK(again[i].auc_weighted == reports[i].auc_weighted);
    }
}

TEST_CASE("cross validation: shuffled labels stay near chance") {
    Rng rng(5);
    FeatureMatrix X;
    Labels y;
    for (int i = 0; i < 200; ++i) {
        X.push_back({rng.normal(), rng.normal(), rng.normal()});
        y.push_back(i % 4 == 0 ? 1 : 0);
    }
    // shuffle labels so any structure is gone
    std::vector<std::size_t> perm(y.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    Rng shuffler(55);
    shuffler.shuffle(perm);
    Labels shuffled(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) shuffled[i] = y[perm[i]];
    auto ds = make_dataset(X, shuffled);

    for (const auto& name : {"NB", "DT", "RF"}) {
        auto spec = learn::ModelSpec::parse(name, 5);
        if (spec.kind == ModelSpec::Kind::RF) spec.trees = 30;
        const auto reports = cross_validate(ds, spec, 10);
        double mean_auc = 0.0;
        for (const auto& r : reports) mean_auc += r.auc_weighted;
        mean_auc /= static_cast<double>(reports.size());
        CHECK_MESSAGE(mean_auc >= 0.35, name);
        CHECK_MESSAGE(mean_auc <= 0.65, name);
    }
}

TEST_CASE("permutation importance: planted signal, constants, duplicates") {
    Rng rng(13);
    FeatureMatrix X;
    Labels y;
    for (int i = 0; i < 150; ++i) {
        const double signal = rng.normal();
        X.push_back({signal, rng.normal(), rng.normal(), 7.0});
        y.push_back(signal > 0.1 ? 1 : 0);
    }
    auto ds = make_dataset(X, y, {"signal", "noise1", "noise2", "flat"});

    auto spec = ModelSpec::rf(13, 30);
    const auto ranking = permutation_importance(ds, spec, ds.feature_names, 10, 10);

    // informative feature ranked first
    CHECK(ranking.rank[0] == doctest::Approx(1.0));
    // constant column: shuffling changes nothing, importance exactly zero
    CHECK(ranking.importance[3] == 0.0);
    // ranks are a (possibly tied) permutation of 1..p
    double rank_sum = 0.0;
    for (double r : ranking.rank) rank_sum += r;
    CHECK(rank_sum == doctest::Approx(4.0 * 5.0 / 2.0));

    // duplicated informative column dilutes both copies
    FeatureMatrix Xd;
    for (const auto& row : X) Xd.push_back({row[0], row[0], row[1]});
    auto dup = make_dataset(Xd, y, {"signal_a", "signal_b", "noise"});
    const auto dup_ranking = permutation_importance(dup, spec, dup.feature_names, 10, 10);

    FeatureMatrix Xs;
    for (const auto& row : X) Xs.push_back({row[0], row[1]});
    auto single = make_dataset(Xs, y, {"signal", "noise"});
    const auto single_ranking = permutation_importance(single, spec, single.feature_names, 10, 10);

    CHECK(dup_ranking.importance[0] < single_ranking.importance[0]);
    CHECK(dup_ranking.importance[1] < single_ranking.importance[0]);
}

TEST_CASE("permutation importance of a label-independent feature shrinks with repeats") {
    Rng rng(43);
    FeatureMatrix X;
    Labels y;
    for (int i = 0; i < 120; ++i) {
        const double signal = rng.normal();
        X.push_back({signal, rng.normal()});
        y.push_back(signal > 0.0 ? 1 : 0);
    }
    auto ds = make_dataset(X, y, {"signal", "noise"});
    const auto ranking =
        permutation_importance(ds, ModelSpec::dt(43), ds.feature_names, 10, 50);
    CHECK(std::fabs(ranking.importance[1]) < 0.05);
}

TEST_CASE("rank aggregation quartiles match hand interpolation") {
    // three projects with hand-specified ranks for two metrics
    std::vector<std::map<std::string, double>> per_project = {
        {{"NOC", 1.0}, {"CBO", 9.0}},
        {{"NOC", 2.0}, {"CBO", 8.0}},
        {{"NOC", 4.0}, {"CBO", 9.0}},
    };
    const auto agg = report::aggregate_rankings(per_project);
    // sorted NOC ranks {1,2,4}: q1 = 1.5, median 2, q3 = 3
    CHECK(agg.at("NOC").min == doctest::Approx(1.0));
    CHECK(agg.at("NOC").q1 == doctest::Approx(1.5));
    CHECK(agg.at("NOC").median == doctest::Approx(2.0));
    CHECK(agg.at("NOC").q3 == doctest::Approx(3.0));
    CHECK(agg.at("NOC").max == doctest::Approx(4.0));
    CHECK(agg.at("CBO").median == doctest::Approx(9.0));

    // single project: the summary is that project's ranks
    const auto solo = report::aggregate_rankings({per_project[0]});
    CHECK(solo.at("NOC").min == doctest::Approx(1.0));
    CHECK(solo.at("NOC").max == doctest::Approx(1.0));
    // identical rankings -> zero-width boxes
    const auto twin = report::aggregate_rankings({per_project[0], per_project[0]});
    CHECK(twin.at("CBO").q1 == twin.at("CBO").q3);
}
