#include "doctest.h"

#include <cmath>
#include <limits>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/rng.hpp"
#include "defectlab/stats/ols.hpp"
#include "defectlab/stats/rank_tests.hpp"
#include "defectlab/stats/vif.hpp"
#include "oracles.hpp"

using namespace defectlab;
using namespace defectlab::stats;

namespace {

data::Dataset dataset_from_columns(const std::vector<std::string>& names,
                                   const std::vector<std::vector<double>>& columns) {
    data::Dataset ds;
    ds.feature_names = names;
    const std::size_t n = columns[0].size();
    for (std::size_t i = 0; i < n; ++i) {
        data::DatasetRow row;
        row.project = "synthetic";
        row.fqn = "r" + std::to_string(i);
        for (const auto& col : columns) row.features.push_back(col[i]);
        ds.rows.push_back(std::move(row));
    }
    return ds;
}

}  // namespace

TEST_CASE("ols: exact fit and orthogonal response") {
    // y exactly linear in X -> R² = 1
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (int i = 0; i < 12; ++i) {
        const double a = i, b = (i * 7) % 5;
        X.push_back({a, b});
        y.push_back(3.0 * a - 2.0 * b + 4.0);
    }
    const auto fit = ols_fit(X, y);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.coefficients[0] == doctest::Approx(3.0));
    CHECK(fit.coefficients[1] == doctest::Approx(-2.0));

    // X orthogonal to the centered response -> R² = 0
    std::vector<std::vector<double>> Xo = {{1}, {1}, {-1}, {-1}};
    std::vector<double> yo = {1.0, -1.0, 1.0, -1.0};
    CHECK(ols_fit(Xo, yo).r_squared == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ols: seeded design matches the normal-equations oracle") {
    Rng rng(7);
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> row = {rng.normal(), rng.normal(), rng.normal()};
        y.push_back(1.5 * row[0] - 0.5 * row[1] + 0.25 * row[2] + 0.3 * rng.normal());
        X.push_back(std::move(row));
    }
    const auto fit = ols_fit(X, y);
    const auto oracle = testsupport::normal_equations_fit(X, y);
    REQUIRE(fit.coefficients.size() == oracle.coefficients.size());
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
        CHECK(fit.coefficients[i] == doctest::Approx(oracle.coefficients[i]).epsilon(1e-8));
    CHECK(fit.r_squared == doctest::Approx(oracle.r_squared).epsilon(1e-8));
}

TEST_CASE("ols: degenerate response") {
    std::vector<std::vector<double>> X = {{1}, {2}, {3}};
    std::vector<double> y = {5.0, 5.0, 5.0};
    CHECK_THROWS_AS(ols_fit(X, y), DegenerateResponse);
}

TEST_CASE("vif: orthogonal, duplicated and near-collinear columns") {
    // Orthogonal columns -> VIF 1
    std::vector<double> c1, c2;
    for (int i = 0; i < 16; ++i) {
        c1.push_back(i % 2 == 0 ? 1.0 : -1.0);
        c2.push_back((i / 2) % 2 == 0 ? 1.0 : -1.0);
    }
    auto ds = dataset_from_columns({"a", "b"}, {c1, c2});
    auto report = vif_table(ds, {"a", "b"});
    CHECK(report.entries[0].vif == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.entries[1].vif == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(report.entries[0].flag == VifFlag::Ok);

    // Duplicated column -> +infinity for both
    auto dup = dataset_from_columns({"a", "b"}, {c1, c1});
    auto dup_report = vif_table(dup, {"a", "b"});
    CHECK(std::isinf(dup_report.entries[0].vif));
    CHECK(std::isinf(dup_report.entries[1].vif));
    CHECK(dup_report.entries[0].flag == VifFlag::Severe);

    // x3 = x1 + x2 + small noise (seed 11): matches brute force, exceeds 10
    Rng rng(11);
    std::vector<double> x1, x2, x3;
    for (int i = 0; i < 40; ++i) {
        x1.push_back(rng.normal());
        x2.push_back(rng.normal());
        x3.push_back(x1.back() + x2.back() + 0.05 * rng.normal());
    }
    auto tri = dataset_from_columns({"x1", "x2", "x3"}, {x1, x2, x3});
    auto tri_report = vif_table(tri, {"x1", "x2", "x3"});
    const double expected = testsupport::brute_force_vif({x1, x2, x3}, 2);
    CHECK(tri_report.entries[2].vif == doctest::Approx(expected).epsilon(1e-6));
    CHECK(tri_report.entries[2].vif > 10.0);
    CHECK(tri_report.entries[2].flag == VifFlag::Severe);
}

TEST_CASE("vif: invariance under shift and scale") {
    Rng rng(23);
    std::vector<double> a, b, c;
    for (int i = 0; i < 30; ++i) {
        a.push_back(rng.normal());
        b.push_back(rng.normal() + 0.6 * a.back());
        c.push_back(rng.normal() - 0.3 * a.back());
    }
    auto base = vif_table(dataset_from_columns({"a", "b", "c"}, {a, b, c}), {"a", "b", "c"});

    std::vector<double> a_shift(a), b_scale(b);
    for (double& v : a_shift) v += 100.0;
    for (double& v : b_scale) v *= 7.5;
    auto changed =
        vif_table(dataset_from_columns({"a", "b", "c"}, {a_shift, b_scale, c}), {"a", "b", "c"});
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(changed.entries[i].vif == doctest::Approx(base.entries[i].vif).epsilon(1e-6));
}

TEST_CASE("vif: zero-variance feature is degenerate, not scored") {
    std::vector<double> c1, c2, flat;
    Rng rng(3);
    for (int i = 0; i < 12; ++i) {
        c1.push_back(rng.normal());
        c2.push_back(rng.normal());
        flat.push_back(4.0);
    }
    auto report =
        vif_table(dataset_from_columns({"a", "b", "flat"}, {c1, c2, flat}), {"a", "b", "flat"});
    CHECK(report.entries[2].flag == VifFlag::Degenerate);
}

TEST_CASE("screening: nine candidates, thresholds per the protocol") {
    VifReport report;
    report.entries = {{"LCOM5", 1.2, VifFlag::Ok},      {"NLE", 3.0, VifFlag::Investigate},
                      {"CBO", 1.1, VifFlag::Ok},        {"CBOI", 1.0, VifFlag::Ok},
                      {"CD", 1.0, VifFlag::Ok},         {"DIT", 1.0, VifFlag::Ok},
                      {"NOC", 1.0, VifFlag::Ok},        {"NPA", 1.0, VifFlag::Ok},
                      {"NPM", 1.0, VifFlag::Ok}};
    auto screening = screen_features(report);
    CHECK(screening.kept.size() == 9);
    CHECK_FALSE(screening.project_excluded);

    report.entries[3] = {"CBOI", 12.0, VifFlag::Severe};
    auto excluded = screen_features(report);
    CHECK(excluded.project_excluded);

    VifReport twelve = report;
    twelve.entries.push_back({"RFC", 8.0, VifFlag::Investigate});
    twelve.entries.push_back({"WMC", 6.0, VifFlag::Investigate});
    twelve.entries.push_back({"LOC", 2.0, VifFlag::Ok});
    auto s12 = screen_features(twelve);
    CHECK(s12.kept.size() == 9);
    CHECK(s12.excluded == std::vector<std::string>{"RFC", "WMC", "LOC"});
}

TEST_CASE("mann-whitney: identical, separated, oracle comparison") {
    std::vector<double> a = {1, 2, 3, 4, 5};

    auto same = mann_whitney(a, a);
    CHECK(same.statistic == doctest::Approx(12.5));  // |a||b|/2
    CHECK(same.p_value > 0.9);
    CHECK_FALSE(same.significant);

    std::vector<double> lo = {1, 2, 3}, hi = {10, 11, 12};
    CHECK(mann_whitney(lo, hi).statistic == doctest::Approx(0.0));

    std::vector<double> b = {3, 4, 5, 6, 7};
    auto approx = mann_whitney(a, b);
    const double exact = testsupport::exact_mann_whitney_p(a, b);
    CHECK(std::fabs(approx.p_value - exact) < 0.02);

    // symmetry and the U sum identity
    auto ab = mann_whitney(a, b);
    auto ba = mann_whitney(b, a);
    CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
    CHECK(ab.statistic + ba.statistic ==
          doctest::Approx(static_cast<double>(a.size() * b.size())));
}

TEST_CASE("mann-whitney: more oracle points at n <= 8 with ties") {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases = {
        {{1, 1, 2, 5, 6}, {2, 3, 3, 7, 9}},
        {{0.5, 0.9, 1.1, 1.6, 2.4}, {0.4, 1.2, 1.3, 2.0}},
        {{4, 4, 5, 4, 6, 7}, {4, 5, 5, 6, 8, 9}},
        {{1, 3, 5, 7, 9, 11}, {2, 4, 6, 8, 10, 12}},
        {{1, 1, 2, 2}, {3, 3, 4, 4}},
        {{1, 2, 3, 4, 5, 6, 7, 8}, {2, 4, 6, 8, 10, 12, 14, 16}},
    };
    for (const auto& [a, b] : cases) {
        const auto approx = mann_whitney(a, b);
        const double exact = testsupport::exact_mann_whitney_p(a, b);
        CHECK_MESSAGE(std::fabs(approx.p_value - exact) < 0.02,
                      "p=" << approx.p_value << " exact=" << exact);
    }
}

TEST_CASE("mann-whitney: degenerate pooled sample") {
    std::vector<double> a = {2, 2, 2}, b = {2, 2};
    auto r = mann_whitney(a, b);
    CHECK(r.degenerate);
    CHECK(r.p_value == doctest::Approx(1.0));
}

TEST_CASE("kruskal-wallis: closed form, degenerate, separation") {
    auto r = kruskal_wallis({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(r.statistic == doctest::Approx(7.2).epsilon(1e-9));

    auto flat = kruskal_wallis({{5, 5}, {5, 5}, {5, 5}});
    CHECK(flat.degenerate);
    CHECK(flat.statistic == doctest::Approx(0.0));
    CHECK(flat.p_value == doctest::Approx(1.0));

    auto sep = kruskal_wallis({{1, 2, 1, 2}, {1.5, 2.5, 1.2, 2.2}, {50, 51, 52, 53}});
    CHECK(sep.p_value < 0.05);
    CHECK(sep.significant);
}

TEST_CASE("kruskal-wallis on two groups agrees with mann-whitney") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a, b;
        const double shift = (trial % 5) * 0.4;
        for (int i = 0; i < 12; ++i) {
            a.push_back(rng.normal());
            b.push_back(rng.normal() + shift);
        }
        const auto mw = mann_whitney(a, b);
        const auto kw = kruskal_wallis({a, b});
        if (std::fabs(mw.p_value - 0.05) < 0.005 || std::fabs(kw.p_value - 0.05) < 0.005)
            continue;  // straddling the threshold is excluded by contract
        CHECK(mw.significant == kw.significant);
    }
}

TEST_CASE("ols: rank-deficient design still yields a fit and a valid R²") {
    // duplicate predictor column: the normal equations are singular, the
    // orthogonal decomposition still produces a (minimum-norm) solution
    std::vector<std::vector<double>> X;
    std::vector<double> y;
    Rng rng(41);
    for (int i = 0; i < 15; ++i) {
        const double a = rng.normal();
        X.push_back({a, a, rng.normal()});
        y.push_back(2.0 * a + 0.5 * X.back()[2] + 0.01 * rng.normal());
    }
    const auto fit = ols_fit(X, y);
    CHECK(fit.r_squared > 0.99);
    CHECK(fit.r_squared <= 1.0 + 1e-12);
    // the duplicated columns share the weight in the minimum-norm solution
    CHECK(fit.coefficients[0] == doctest::Approx(fit.coefficients[1]).epsilon(1e-6));
}
