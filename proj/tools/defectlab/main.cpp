#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "defectlab/common/errors.hpp"
#include "defectlab/pipeline/run.hpp"

namespace fs = std::filesystem;
using namespace defectlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

void echo(const pipeline::StageLog& log, bool quiet) {
    for (const auto& d : log.diagnostics) {
        const char* sev = d.severity == Severity::Error ? "error"
                          : d.severity == Severity::Warning ? "warning"
                                                            : "note";
        std::cerr << sev << ": " << d.source;
        if (d.line > 0) std::cerr << ":" << d.line;
        std::cerr << ": " << d.message << "\n";
    }
    if (!quiet)
        for (const auto& f : log.written) std::cout << "wrote " << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"defectlab: class-level Java metrics, defect labels and prediction benchmarks"};
    app.require_subcommand(1);

    std::string config_path;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON config file (pipeline constants)");
    app.add_flag("--quiet", quiet, "suppress the list of written files");

    // Options shared by several subcommands.
    std::string out_dir;
    std::string project_name;
    std::string issues_file;
    std::string suite = "CK+OTHER";
    std::string out_file;
    int interval_months = 0;
    int k = 0;
    int repeats = 0;
    std::uint64_t seed = 0;
    bool have_seed = false;
    std::vector<std::string> fix_patterns;
    std::vector<std::string> models;
    bool keep_duplicates = false;

    auto* mine = app.add_subcommand("mine", "window a repository and label defective classes");
    std::string repo_path;
    mine->add_option("repo", repo_path, "path to a local git clone")->required();
    mine->add_option("--out", out_dir, "output root (default: config, or DEFECTLAB_OUT)");
    mine->add_option("--project", project_name, "project name (default: repo directory name)");
    mine->add_option("--issues", issues_file, "issues.ndjson with {id, created} records");
    mine->add_option("--interval-months", interval_months, "release window length");
    mine->add_option("--fix-pattern", fix_patterns, "override fix keywords (repeatable)");

    auto* metrics_cmd = app.add_subcommand("metrics", "compute the 12 class metrics");
    std::string snapshot_path;
    metrics_cmd->add_option("snapshot", snapshot_path,
                            "snapshot directory of .java files, or a mined project directory")
        ->required();
    metrics_cmd->add_option("--out", out_file, "metrics.csv path (single-snapshot mode)");

    auto* dataset_cmd = app.add_subcommand("dataset", "join metrics and labels per release");
    std::string project_dir;
    dataset_cmd->add_option("project", project_dir, "mined project directory")->required();
    dataset_cmd->add_flag("--keep-duplicates", keep_duplicates, "skip duplicate-row deletion");

    auto* eval_cmd = app.add_subcommand("evaluate", "cross-validate classifiers on a dataset");
    std::string dataset_path;
    eval_cmd->add_option("dataset", dataset_path, "dataset.csv")->required();
    eval_cmd->add_option("--suite", suite, "metric suite: LOC, CK, OTHER, CK+OTHER");
    eval_cmd->add_option("--model", models, "models to run (default NB DT RF)");
    eval_cmd->add_option("--k", k, "cross-validation folds");
    eval_cmd->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        have_seed = true;
    });
    eval_cmd->add_option("--out", out_file, "scores.csv path");

    auto* imp_cmd = app.add_subcommand("importance", "VIF screening and permutation importance");
    imp_cmd->add_option("dataset", dataset_path, "dataset.csv")->required();
    imp_cmd->add_option("--k", k, "cross-validation folds");
    imp_cmd->add_option("--repeats", repeats, "shuffles per feature and fold");
    imp_cmd->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
        have_seed = true;
    });
    imp_cmd->add_option("--out", out_dir, "output directory (default: next to the dataset)");

    auto* report_cmd = app.add_subcommand("report", "summaries, figures and significance tests");
    std::string run_dir;
    report_cmd->add_option("run", run_dir, "run directory with per-project stage outputs")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        pipeline::RunConfig config;
        if (!config_path.empty()) config = pipeline::RunConfig::load(config_path);
        if (interval_months > 0) config.interval_months = interval_months;
        if (k > 0) config.k = k;
        if (repeats > 0) config.repeats = repeats;
        if (have_seed) config.seed = seed;
        if (!fix_patterns.empty()) config.fix_keywords = fix_patterns;
        if (!issues_file.empty()) config.issues_file = issues_file;
        if (!models.empty()) config.models = models;
        if (keep_duplicates) config.dedup = false;
        config.validate();

        if (mine->parsed()) {
            const fs::path repo(repo_path);
            if (!fs::exists(repo)) throw DataError("repository path does not exist: " + repo_path);
            const std::string project =
                project_name.empty() ? fs::canonical(repo).filename().string() : project_name;
            echo(pipeline::stage_mine(config, repo, project,
                                      pipeline::resolve_out_dir(config, out_dir)),
                 quiet);
        } else if (metrics_cmd->parsed()) {
            const fs::path snap(snapshot_path);
            if (fs::exists(snap / "mine")) {
                echo(pipeline::stage_metrics_project(snap), quiet);
            } else {
                const fs::path out =
                    out_file.empty() ? fs::path("metrics.csv") : fs::path(out_file);
                echo(pipeline::stage_metrics_tree(snap, out), quiet);
            }
        } else if (dataset_cmd->parsed()) {
            echo(pipeline::stage_dataset(config, project_dir), quiet);
        } else if (eval_cmd->parsed()) {
            const fs::path ds(dataset_path);
            fs::path out = out_file.empty() ? ds.parent_path().parent_path() / "evaluate" /
                                                  ("scores_" + suite + ".csv")
                                            : fs::path(out_file);
            echo(pipeline::stage_evaluate(config, ds, suite, out), quiet);
        } else if (imp_cmd->parsed()) {
            const fs::path ds(dataset_path);
            const fs::path out = out_dir.empty() ? ds.parent_path().parent_path() / "importance"
                                                 : fs::path(out_dir);
            echo(pipeline::stage_importance(config, ds, out), quiet);
        } else if (report_cmd->parsed()) {
            echo(pipeline::stage_report(config, run_dir), quiet);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
