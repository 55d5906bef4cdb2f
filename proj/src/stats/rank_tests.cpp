#include "defectlab/stats/rank_tests.hpp"

#include <gsl/gsl_cdf.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "defectlab/common/errors.hpp"

namespace defectlab::stats {

std::vector<double> average_ranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

double tie_term(const std::vector<double>& pooled) {
    std::map<double, long> counts;
    for (double v : pooled) ++counts[v];
    double t = 0.0;
    for (const auto& [value, c] : counts)
        t += static_cast<double>(c) * static_cast<double>(c) * static_cast<double>(c) -
             static_cast<double>(c);
    return t;
}

}  // namespace

TestResult mann_whitney(const std::vector<double>& a, const std::vector<double>& b,
                        double alpha) {
    if (a.empty() || b.empty()) throw DataError("mann_whitney: empty sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = average_ranks(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranks[i];
    const double u_a = rank_sum_a - na * (na + 1.0) / 2.0;

    TestResult out;
    out.statistic = u_a;

    bool identical = true;
    for (double v : pooled)
        if (v != pooled.front()) {
            identical = false;
            break;
        }
    const double n = na + nb;
    const double ties = tie_term(pooled);
    const double var =
        na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if (identical || var <= 0.0) {
        out.degenerate = true;
        out.p_value = 1.0;
        out.significant = false;
        return out;
    }

    const double mean = na * nb / 2.0;
    double z = 0.0;
    if (u_a > mean)
        z = (u_a - mean - 0.5) / std::sqrt(var);
    else if (u_a < mean)
        z = (u_a - mean + 0.5) / std::sqrt(var);
    out.p_value = std::min(1.0, 2.0 * gsl_cdf_ugaussian_Q(std::fabs(z)));
    out.significant = out.p_value < alpha;
    return out;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups, double alpha) {
    if (groups.size() < 2) throw DataError("kruskal_wallis: needs at least two groups");
    std::vector<double> pooled;
    for (const auto& g : groups) {
        if (g.empty()) throw DataError("kruskal_wallis: empty group");
        pooled.insert(pooled.end(), g.begin(), g.end());
    }
    const double n = static_cast<double>(pooled.size());
    const std::vector<double> ranks = average_ranks(pooled);

    TestResult out;
    bool identical = true;
    for (double v : pooled)
        if (v != pooled.front()) {
            identical = false;
            break;
        }
    if (identical) {
        out.degenerate = true;
        out.statistic = 0.0;
        out.p_value = 1.0;
        out.significant = false;
        return out;
    }

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranks[offset + i];
        h += rank_sum * rank_sum / static_cast<double>(g.size());
        offset += g.size();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    const double correction = 1.0 - tie_term(pooled) / (n * n * n - n);
    if (correction > 0.0) h /= correction;

    out.statistic = h;
    const double dof = static_cast<double>(groups.size()) - 1.0;
    out.p_value = gsl_cdf_chisq_Q(std::max(h, 0.0), dof);
    out.significant = out.p_value < alpha;
    return out;
}

}  // namespace defectlab::stats
