#pragma once

#include "defectlab/learn/model.hpp"

namespace defectlab::learn {

struct ScoreReport {
    double precision = 0.0;  // defective (minority) class
    double recall = 0.0;
    double f_minority = 0.0;
    double auc_weighted = 0.0;
    long tp = 0, fp = 0, tn = 0, fn = 0;
    bool degenerate_truth = false;  // test fold lacked one class
};

/// Rank-statistic AUC with the U convention for tied scores (each tie
/// contributes one half). Returns 0.5 when either class is empty.
double rank_auc(const std::vector<double>& scores, const Labels& truth, int positive_class);

/// Minority precision/recall/F from hard labels at 0.5, plus support-weighted
/// per-class AUC. For binary proper probabilities the two per-class AUCs are
/// equal; this is asserted rather than assumed.
ScoreReport score(const std::vector<double>& probs, const Labels& truth,
                  Diagnostics* diags = nullptr);

}  // namespace defectlab::learn
