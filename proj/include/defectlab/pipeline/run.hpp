#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "defectlab/common/diagnostics.hpp"

namespace defectlab::pipeline {

/// Pipeline constants. Defaults follow the reference experiment: 6-month
/// windows, 10 stratified folds, 10 permutation repeats, VIF thresholds
/// 2.5/10. Everything is overridable via the JSON config or CLI flags.
struct RunConfig {
    int interval_months = 6;
    std::vector<std::string> fix_keywords;  // empty = built-in defaults
    std::string issues_file;                // optional issues.ndjson
    int k = 10;
    int repeats = 10;
    std::uint64_t seed = 42;
    double vif_investigate = 2.5;
    double vif_exclude = 10.0;
    double alpha = 0.05;
    int rf_trees = 100;
    int dt_max_depth = -1;
    int min_samples_leaf = 1;
    bool dedup = true;
    bool undersample = false;
    double undersample_ratio = 1.0;
    std::string importance_model = "RF";
    std::string importance_score = "auc";  // or "f"
    std::vector<std::string> models = {"NB", "DT", "RF"};
    std::string out_dir = "runs";

    static RunConfig load(const std::filesystem::path& json_path);
    void validate() const;  // throws ConfigError
};

/// Resolves the output root: --out flag beats DEFECTLAB_OUT beats config.
std::filesystem::path resolve_out_dir(const RunConfig& config, const std::string& cli_out);

struct StageLog {
    Diagnostics diagnostics;
    std::vector<std::string> written;  // files produced, for CLI echo
};

StageLog stage_mine(const RunConfig& config, const std::filesystem::path& repo,
                    const std::string& project, const std::filesystem::path& out_root);

/// `metrics` on a single snapshot tree.
StageLog stage_metrics_tree(const std::filesystem::path& snapshot_dir,
                            const std::filesystem::path& out_csv);

/// `metrics` across every mined window of a project directory.
StageLog stage_metrics_project(const std::filesystem::path& project_dir);

StageLog stage_dataset(const RunConfig& config, const std::filesystem::path& project_dir);

StageLog stage_evaluate(const RunConfig& config, const std::filesystem::path& dataset_csv,
                        const std::string& suite, const std::filesystem::path& out_csv);

StageLog stage_importance(const RunConfig& config, const std::filesystem::path& dataset_csv,
                          const std::filesystem::path& out_dir);

StageLog stage_report(const RunConfig& config, const std::filesystem::path& run_dir);

}  // namespace defectlab::pipeline
