#include "defectlab/learn/scoring.hpp"

#include <cmath>

#include "defectlab/common/errors.hpp"
#include "defectlab/stats/rank_tests.hpp"

namespace defectlab::learn {

double rank_auc(const std::vector<double>& scores, const Labels& truth, int positive_class) {
    long pos = 0, neg = 0;
    for (int t : truth) ((t == positive_class) ? pos : neg)++;
    if (pos == 0 || neg == 0) return 0.5;

    const std::vector<double> ranks = stats::average_ranks(scores);
    double rank_sum_pos = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (truth[i] == positive_class) rank_sum_pos += ranks[i];
    const double u = rank_sum_pos - static_cast<double>(pos) * (static_cast<double>(pos) + 1.0) / 2.0;
    return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

ScoreReport score(const std::vector<double>& probs, const Labels& truth, Diagnostics* diags) {
    if (probs.empty() || probs.size() != truth.size())
        throw DataError("score: prediction/truth size mismatch");

    ScoreReport r;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const bool predicted = probs[i] >= 0.5;
        const bool actual = truth[i] != 0;
        if (predicted && actual) ++r.tp;
        else if (predicted && !actual) ++r.fp;
        else if (!predicted && !actual) ++r.tn;
        else ++r.fn;
    }
    r.precision = (r.tp + r.fp) > 0
                      ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp)
                      : 0.0;
    if (r.tp + r.fn > 0) {
        r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
    } else {
        r.recall = 0.0;
        r.degenerate_truth = true;
        if (diags)
            add_diag(*diags, Severity::Warning, "score", 0,
                     "no positive truth in the test fold; recall reported as 0");
    }
    r.f_minority = (r.precision + r.recall) > 0.0
                       ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
                       : 0.0;

    long pos = 0;
    for (int t : truth) pos += t ? 1 : 0;
    const long neg = static_cast<long>(truth.size()) - pos;
    if (pos == 0 || neg == 0) {
        r.degenerate_truth = true;
        r.auc_weighted = 0.5;
        return r;
    }

    const double auc_pos = rank_auc(probs, truth, 1);
    std::vector<double> complement(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) complement[i] = 1.0 - probs[i];
    const double auc_neg = rank_auc(complement, truth, 0);
    if (std::fabs(auc_pos - auc_neg) > 1e-9)
        throw Error("score: per-class AUCs diverged; probabilities are not complementary");
    const double n = static_cast<double>(truth.size());
    r.auc_weighted = (static_cast<double>(pos) / n) * auc_pos +
                     (static_cast<double>(neg) / n) * auc_neg;
    return r;
}

}  // namespace defectlab::learn
