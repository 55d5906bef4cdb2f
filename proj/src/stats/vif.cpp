#include "defectlab/stats/vif.hpp"

#include <cmath>
#include <limits>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/text.hpp"
#include "defectlab/stats/ols.hpp"

namespace defectlab::stats {

const std::vector<std::string>& importance_candidate_metrics() {
    static const std::vector<std::string> nine = {"LCOM5", "NLE", "CBO", "CBOI", "CD",
                                                  "DIT",   "NOC", "NPA", "NPM"};
    return nine;
}

VifReport vif_table(const data::Dataset& dataset, const std::vector<std::string>& features,
                    double investigate_threshold, double exclude_threshold) {
    if (features.size() < 2) throw DataError("vif_table: needs at least two features");
    if (dataset.rows.size() < features.size() + 2)
        throw DataError("vif_table: needs at least features + 2 rows");

    const data::Dataset sub = data::select_features(dataset, features);
    const std::size_t n = sub.rows.size();
    const std::size_t p = features.size();

    std::vector<bool> degenerate(p, false);
    for (std::size_t j = 0; j < p; ++j) {
        const double first = sub.rows[0].features[j];
        bool constant = true;
        for (const auto& row : sub.rows)
            if (row.features[j] != first) {
                constant = false;
                break;
            }
        degenerate[j] = constant;
    }

    VifReport report;
    report.investigate_threshold = investigate_threshold;
    report.exclude_threshold = exclude_threshold;

    for (std::size_t j = 0; j < p; ++j) {
        VifEntry entry;
        entry.feature = features[j];
        if (degenerate[j]) {
            entry.flag = VifFlag::Degenerate;
            entry.vif = 0.0;
            report.entries.push_back(std::move(entry));
            continue;
        }
        std::vector<std::vector<double>> X(n);
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = sub.rows[i].features[j];
            for (std::size_t k = 0; k < p; ++k) {
                if (k == j || degenerate[k]) continue;
                X[i].push_back(sub.rows[i].features[k]);
            }
        }
        double r2 = 0.0;
        if (!X[0].empty()) r2 = ols_fit(X, y).r_squared;
        if (r2 >= 1.0 - 1e-9) {
            entry.vif = std::numeric_limits<double>::infinity();
        } else {
            entry.vif = 1.0 / (1.0 - r2);
        }
        entry.flag = entry.vif >= exclude_threshold
                         ? VifFlag::Severe
                         : (entry.vif >= investigate_threshold ? VifFlag::Investigate
                                                               : VifFlag::Ok);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

Screening screen_features(const VifReport& report) {
    Screening out;
    for (const VifEntry& e : report.entries) {
        if (e.feature == "RFC" || e.feature == "WMC" || e.feature == "LOC") {
            out.excluded.push_back(e.feature);
            continue;
        }
        out.kept.push_back(e.feature);
        if (e.flag == VifFlag::Severe) out.project_excluded = true;
    }
    return out;
}

std::string vif_to_csv(const VifReport& report) {
    std::string out = "feature,vif,flag\n";
    for (const VifEntry& e : report.entries) {
        out += e.feature + ",";
        if (e.flag == VifFlag::Degenerate)
            out += "";
        else if (std::isinf(e.vif))
            out += "inf";
        else
            out += format_double(e.vif, 6);
        switch (e.flag) {
            case VifFlag::Ok: out += ",ok\n"; break;
            case VifFlag::Investigate: out += ",investigate\n"; break;
            case VifFlag::Severe: out += ",severe\n"; break;
            case VifFlag::Degenerate: out += ",degenerate\n"; break;
        }
    }
    return out;
}

}  // namespace defectlab::stats
