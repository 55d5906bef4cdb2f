#include "defectlab/pipeline/run.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "json.hpp"

#include "defectlab/common/errors.hpp"
#include "defectlab/common/fsio.hpp"
#include "defectlab/common/text.hpp"
#include "defectlab/dataset/dataset.hpp"
#include "defectlab/javamodel/source_tree.hpp"
#include "defectlab/learn/cross_validation.hpp"
#include "defectlab/learn/importance.hpp"
#include "defectlab/metrics/metrics.hpp"
#include "defectlab/miner/diff.hpp"
#include "defectlab/miner/fix_classifier.hpp"
#include "defectlab/miner/git_repo.hpp"
#include "defectlab/miner/labeler.hpp"
#include "defectlab/miner/windows.hpp"
#include "defectlab/report/svg.hpp"
#include "defectlab/stats/rank_tests.hpp"
#include "defectlab/stats/vif.hpp"

namespace fs = std::filesystem;

namespace defectlab::pipeline {

using nlohmann::json;

RunConfig RunConfig::load(const fs::path& json_path) {
    RunConfig c;
    const json j = json::parse(read_file(json_path), nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object())
        throw ConfigError("config is not a JSON object: " + json_path.string());

    auto get_int = [&](const char* key, int& out) {
        if (j.contains(key)) out = j.at(key).get<int>();
    };
    get_int("interval_months", c.interval_months);
    get_int("k", c.k);
    get_int("repeats", c.repeats);
    get_int("rf_trees", c.rf_trees);
    get_int("dt_max_depth", c.dt_max_depth);
    get_int("min_samples_leaf", c.min_samples_leaf);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("vif_investigate")) c.vif_investigate = j.at("vif_investigate").get<double>();
    if (j.contains("vif_exclude")) c.vif_exclude = j.at("vif_exclude").get<double>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("dedup")) c.dedup = j.at("dedup").get<bool>();
    if (j.contains("undersample")) c.undersample = j.at("undersample").get<bool>();
    if (j.contains("undersample_ratio"))
        c.undersample_ratio = j.at("undersample_ratio").get<double>();
    if (j.contains("issues_file")) c.issues_file = j.at("issues_file").get<std::string>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("importance_model"))
        c.importance_model = j.at("importance_model").get<std::string>();
    if (j.contains("importance_score"))
        c.importance_score = j.at("importance_score").get<std::string>();
    if (j.contains("fix_keywords"))
        c.fix_keywords = j.at("fix_keywords").get<std::vector<std::string>>();
    if (j.contains("models")) c.models = j.at("models").get<std::vector<std::string>>();
    c.validate();
    return c;
}

void RunConfig::validate() const {
    if (k < 2) throw ConfigError("config: k must be >= 2");
    if (interval_months < 1) throw ConfigError("config: interval_months must be >= 1");
    if (repeats < 1) throw ConfigError("config: repeats must be >= 1");
    if (!(vif_investigate < vif_exclude))
        throw ConfigError("config: vif thresholds must be ordered (investigate < exclude)");
    if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("config: alpha must be in (0,1)");
    if (rf_trees < 1) throw ConfigError("config: rf_trees must be >= 1");
    if (min_samples_leaf < 1) throw ConfigError("config: min_samples_leaf must be >= 1");
    if (importance_score != "auc" && importance_score != "f")
        throw ConfigError("config: importance_score must be 'auc' or 'f'");
    for (const auto& m : models)
        if (m != "NB" && m != "DT" && m != "RF")
            throw ConfigError("config: unknown model " + m);
}

fs::path resolve_out_dir(const RunConfig& config, const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (const char* env = std::getenv("DEFECTLAB_OUT"); env && *env) return env;
    return config.out_dir;
}

namespace {

learn::ModelSpec model_spec_for(const RunConfig& config, const std::string& name) {
    learn::ModelSpec spec = learn::ModelSpec::parse(name, config.seed);
    spec.trees = config.rf_trees;
    spec.max_depth = config.dt_max_depth;
    spec.min_samples_leaf = config.min_samples_leaf;
    return spec;
}

void write_out(StageLog& log, const fs::path& path, const std::string& content) {
    atomic_write(path, content);
    log.written.push_back(path.string());
}

std::string window_dir_name(int index) { return "window_" + std::to_string(index); }

}  // namespace

StageLog stage_mine(const RunConfig& config, const fs::path& repo, const std::string& project,
                    const fs::path& out_root) {
    StageLog log;
    miner::GitRepo git(repo);
    const auto history = git.first_parent_history();
    const auto& keywords =
        config.fix_keywords.empty() ? miner::default_fix_keywords() : config.fix_keywords;

    // Issue creation times: explicit file, or issues.ndjson in the clone.
    std::map<std::string, std::int64_t> issue_times;
    fs::path issues_path = config.issues_file.empty() ? repo / "issues.ndjson"
                                                      : fs::path(config.issues_file);
    if (fs::exists(issues_path))
        issue_times = miner::load_issue_times(read_file(issues_path), log.diagnostics);

    struct Fix {
        const miner::CommitInfo* commit;
        std::vector<std::string> evidence;
        std::string issue_ref;
        std::int64_t assignment = 0;
        int window = -1;
    };
    std::vector<Fix> fixes;
    for (const auto& c : history) {
        if (c.first_parent.empty()) continue;  // root commits carry no diff
        const auto cls = miner::classify_fix_commit(c.message, keywords);
        if (!cls.is_fix) continue;
        Fix fix;
        fix.commit = &c;
        fix.evidence = cls.evidence;
        fix.assignment = c.commit_time;
        for (const auto& id : cls.issue_ids) {
            auto it = issue_times.find(id);
            if (it != issue_times.end()) {
                fix.issue_ref = id;
                fix.assignment = it->second;  // release = issue creation time
                break;
            }
        }
        fixes.push_back(std::move(fix));
    }

    std::vector<std::int64_t> fix_instants;
    for (const auto& f : fixes) fix_instants.push_back(f.assignment);
    const auto windows =
        miner::enumerate_release_windows(history, config.interval_months, fix_instants);
    const std::int64_t anchor = history.front().commit_time;
    for (auto& f : fixes) {
        f.window = std::min(miner::window_index(anchor, config.interval_months, f.assignment),
                            static_cast<int>(windows.size()) - 1);
    }

    const fs::path mine_dir = out_root / project / "mine";

    std::string windows_csv = "index,snapshot,start,end\n";
    for (const auto& w : windows)
        windows_csv += std::to_string(w.index) + "," + w.snapshot_sha + "," +
                       miner::format_instant_utc(w.start) + "," +
                       miner::format_instant_utc(w.end) + "\n";
    write_out(log, mine_dir / "windows.csv", windows_csv);

    std::string fixes_csv = "sha,commit_time,assignment,window,issue,evidence\n";
    for (const auto& f : fixes) {
        std::string ev;
        for (std::size_t i = 0; i < f.evidence.size(); ++i) {
            if (i) ev += '|';
            ev += f.evidence[i];
        }
        fixes_csv += f.commit->sha + "," + miner::format_instant_utc(f.commit->commit_time) +
                     "," + miner::format_instant_utc(f.assignment) + "," +
                     std::to_string(f.window) + "," + f.issue_ref + "," + csv_quote(ev) + "\n";
    }
    write_out(log, mine_dir / "fix_commits.csv", fixes_csv);

    // Changed lines per fix commit, parent side.
    std::map<std::string, std::map<std::string, std::set<int>>> fix_lines;
    for (const auto& f : fixes) {
        try {
            const std::string diff = git.diff_against_first_parent(*f.commit);
            fix_lines[f.commit->sha] = miner::java_changed_lines(miner::parse_unified_diff(diff));
        } catch (const GitCommandError& e) {
            add_diag(log.diagnostics, Severity::Warning, f.commit->sha, 0,
                     std::string("diff unavailable, commit skipped: ") + e.what());
        }
    }

    for (const auto& w : windows) {
        const fs::path wdir = mine_dir / window_dir_name(w.index);
        auto sources = git.java_sources_at(w.snapshot_sha);
        std::sort(sources.begin(), sources.end());

        for (const auto& [path, content] : sources)
            write_out(log, wdir / "snapshot" / path, content);

        auto files = javamodel::parse_sources(sources, log.diagnostics);
        auto model = javamodel::build_project_model(std::move(files));
        for (const auto& d : model.diagnostics) log.diagnostics.push_back(d);

        std::vector<miner::FixChanges> assigned;
        for (const auto& f : fixes) {
            if (f.window != w.index) continue;
            auto it = fix_lines.find(f.commit->sha);
            if (it == fix_lines.end()) continue;
            assigned.push_back({f.commit->sha, it->second});
        }
        auto result = miner::label_defective_classes(w.index, model, assigned);
        for (const auto& d : result.diagnostics) log.diagnostics.push_back(d);

        std::string labels_csv = "fqn,defective\n";
        std::string prov_csv = "fqn,commit,file,line\n";
        for (const auto& label : result.labels) {
            labels_csv += csv_quote(label.fqn) + (label.defective ? ",1\n" : ",0\n");
            for (const auto& p : label.provenance)
                prov_csv += csv_quote(label.fqn) + "," + p.commit + "," + csv_quote(p.file) +
                            "," + std::to_string(p.line) + "\n";
        }
        write_out(log, wdir / "labels.csv", labels_csv);
        write_out(log, wdir / "provenance.csv", prov_csv);
    }
    return log;
}

StageLog stage_metrics_tree(const fs::path& snapshot_dir, const fs::path& out_csv) {
    StageLog log;
    auto files = javamodel::parse_source_tree(snapshot_dir, log.diagnostics);
    if (has_errors(log.diagnostics))
        throw DataError("metrics: cannot read snapshot tree " + snapshot_dir.string());
    auto model = javamodel::build_project_model(std::move(files));
    for (const auto& d : model.diagnostics) log.diagnostics.push_back(d);
    write_out(log, out_csv, metrics::to_csv(metrics::compute_all(model)));
    return log;
}

StageLog stage_metrics_project(const fs::path& project_dir) {
    StageLog log;
    const fs::path mine_dir = project_dir / "mine";
    if (!fs::exists(mine_dir))
        throw DataError("metrics: no mine/ directory under " + project_dir.string() +
                        " (run mine first)");
    bool any = false;
    for (const auto& entry : fs::directory_iterator(mine_dir)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (name.rfind("window_", 0) != 0) continue;
        any = true;
        StageLog sub = stage_metrics_tree(entry.path() / "snapshot",
                                          project_dir / "metrics" / name / "metrics.csv");
        log.diagnostics.insert(log.diagnostics.end(), sub.diagnostics.begin(),
                               sub.diagnostics.end());
        log.written.insert(log.written.end(), sub.written.begin(), sub.written.end());
    }
    if (!any) throw DataError("metrics: no mined windows under " + mine_dir.string());
    return log;
}

StageLog stage_dataset(const RunConfig& config, const fs::path& project_dir) {
    StageLog log;
    const std::string project = project_dir.filename().string();
    std::vector<data::Dataset> parts;

    const fs::path mine_dir = project_dir / "mine";
    if (!fs::exists(mine_dir))
        throw DataError("dataset: no mine/ directory under " + project_dir.string());
    std::vector<int> windows;
    for (const auto& entry : fs::directory_iterator(mine_dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_directory() && name.rfind("window_", 0) == 0)
            windows.push_back(std::stoi(name.substr(7)));
    }
    std::sort(windows.begin(), windows.end());
    if (windows.empty()) throw DataError("dataset: no mined windows for " + project);

    for (int w : windows) {
        const fs::path metrics_csv =
            project_dir / "metrics" / window_dir_name(w) / "metrics.csv";
        const fs::path labels_csv = mine_dir / window_dir_name(w) / "labels.csv";
        if (!fs::exists(metrics_csv))
            throw DataError("dataset: missing " + metrics_csv.string() + " (run metrics first)");
        const auto vectors = metrics::from_csv(read_file(metrics_csv), metrics_csv.string());

        std::vector<std::pair<std::string, bool>> labels;
        const auto lines = split_lines(read_file(labels_csv));
        std::vector<std::string> fields;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty()) continue;
            if (!csv_split(lines[i], fields) || fields.size() != 2)
                throw MalformedCsv(labels_csv.string(), static_cast<int>(i + 1), "bad label row");
            labels.emplace_back(fields[0], fields[1] == "1");
        }
        parts.push_back(data::assemble(vectors, labels, project, w, log.diagnostics));
    }

    data::Dataset dataset = data::concat(parts);
    if (config.dedup) dataset = data::deduplicate(dataset);
    if (config.undersample)
        dataset = data::undersample(dataset, config.undersample_ratio, config.seed);
    write_out(log, project_dir / "dataset" / "dataset.csv", data::write_csv(dataset));
    return log;
}

StageLog stage_evaluate(const RunConfig& config, const fs::path& dataset_csv,
                        const std::string& suite, const fs::path& out_csv) {
    StageLog log;
    const data::Dataset full = data::read_csv(read_file(dataset_csv), dataset_csv.string());
    if (full.rows.empty()) throw DataError("evaluate: empty dataset " + dataset_csv.string());
    const data::Dataset sub = data::select_features(full, learn::metric_suite(suite));
    const std::string project = full.rows.front().project;

    std::string csv = "project,suite,model,fold,precision,recall,f_minority,auc_weighted\n";
    for (const std::string& model_name : config.models) {
        const auto spec = model_spec_for(config, model_name);
        const auto reports = learn::cross_validate(sub, spec, config.k, &log.diagnostics);
        for (std::size_t fold = 0; fold < reports.size(); ++fold) {
            const auto& r = reports[fold];
            csv += csv_quote(project) + "," + suite + "," + model_name + "," +
                   std::to_string(fold) + "," + format_score(r.precision) + "," +
                   format_score(r.recall) + "," + format_score(r.f_minority) + "," +
                   format_score(r.auc_weighted) + "\n";
        }
    }
    write_out(log, out_csv, csv);
    return log;
}

StageLog stage_importance(const RunConfig& config, const fs::path& dataset_csv,
                          const fs::path& out_dir) {
    StageLog log;
    const data::Dataset full = data::read_csv(read_file(dataset_csv), dataset_csv.string());
    if (full.rows.empty()) throw DataError("importance: empty dataset " + dataset_csv.string());
    const std::string project = full.rows.front().project;

    const auto& nine = stats::importance_candidate_metrics();
    const auto report =
        stats::vif_table(full, nine, config.vif_investigate, config.vif_exclude);
    write_out(log, out_dir / "vif.csv", stats::vif_to_csv(report));

    const auto screening = stats::screen_features(report);
    if (screening.project_excluded) {
        add_diag(log.diagnostics, Severity::Warning, project, 0,
                 "project excluded from importance analysis: VIF at or above " +
                     format_double(config.vif_exclude, 1));
        write_out(log, out_dir / "excluded.txt",
                  "excluded: a remaining feature reached VIF >= " +
                      format_double(config.vif_exclude, 1) + "\n");
        return log;
    }

    auto spec = model_spec_for(config, config.importance_model);
    const auto ranking = learn::permutation_importance(
        full, spec, screening.kept, config.k, config.repeats, &log.diagnostics,
        config.importance_score == "f");

    std::string csv = "project,metric,importance,rank\n";
    for (std::size_t i = 0; i < ranking.features.size(); ++i)
        csv += csv_quote(project) + "," + ranking.features[i] + "," +
               format_score(ranking.importance[i]) + "," + format_double(ranking.rank[i], 1) +
               "\n";
    write_out(log, out_dir / "importance.csv", csv);
    return log;
}

namespace {

struct ScoreRow {
    std::string project, suite, model;
    int fold = 0;
    double precision = 0, recall = 0, f_minority = 0, auc = 0;
};

std::vector<ScoreRow> read_scores(const fs::path& file) {
    std::vector<ScoreRow> rows;
    const auto lines = split_lines(read_file(file));
    if (lines.empty() ||
        lines[0] != "project,suite,model,fold,precision,recall,f_minority,auc_weighted")
        throw MalformedCsv(file.string(), 1, "bad scores header");
    std::vector<std::string> fields;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        if (!csv_split(lines[i], fields) || fields.size() != 8)
            throw MalformedCsv(file.string(), static_cast<int>(i + 1), "bad scores row");
        ScoreRow r;
        r.project = fields[0];
        r.suite = fields[1];
        r.model = fields[2];
        r.fold = std::stoi(fields[3]);
        r.precision = std::stod(fields[4]);
        r.recall = std::stod(fields[5]);
        r.f_minority = std::stod(fields[6]);
        r.auc = std::stod(fields[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

StageLog stage_report(const RunConfig& config, const fs::path& run_dir) {
    StageLog log;
    std::vector<ScoreRow> scores;
    std::vector<std::map<std::string, double>> project_ranks;
    std::string vif_overview = "project,feature,vif,flag\n";

    // Directory iteration order is unspecified; sort for stable output bytes.
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(run_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
        const std::string name = path.filename().string();
        if (name.rfind("scores", 0) == 0 && path.extension() == ".csv") {
            const auto rows = read_scores(path);
            scores.insert(scores.end(), rows.begin(), rows.end());
        } else if (name == "importance.csv") {
            const auto lines = split_lines(read_file(path));
            std::map<std::string, double> ranks;
            std::vector<std::string> fields;
            for (std::size_t i = 1; i < lines.size(); ++i) {
                if (lines[i].empty()) continue;
                if (!csv_split(lines[i], fields) || fields.size() != 4)
                    throw MalformedCsv(path.string(), static_cast<int>(i + 1),
                                       "bad importance row");
                ranks[fields[1]] = std::stod(fields[3]);
            }
            if (!ranks.empty()) project_ranks.push_back(std::move(ranks));
        } else if (name == "vif.csv") {
            const std::string project = path.parent_path().parent_path().filename().string();
            const auto lines = split_lines(read_file(path));
            for (std::size_t i = 1; i < lines.size(); ++i)
                if (!lines[i].empty()) vif_overview += csv_quote(project) + "," + lines[i] + "\n";
        }
    }
    if (scores.empty()) throw DataError("report: no scores.csv found under " + run_dir.string());

    const fs::path report_dir = run_dir / "report";
    const std::vector<std::string> suites = {"LOC", "CK", "OTHER", "CK+OTHER"};
    const std::vector<std::string> scorings = {"f_minority", "auc_weighted"};

    auto pick = [&](const ScoreRow& r, const std::string& scoring) {
        return scoring == "f_minority" ? r.f_minority : r.auc;
    };
    auto sample_of = [&](const std::string& suite, const std::string& model,
                         const std::string& scoring) {
        std::vector<double> v;
        for (const auto& r : scores)
            if (r.suite == suite && r.model == model) v.push_back(pick(r, scoring));
        return v;
    };

    // Five-number summaries and boxplot figures (one per scoring metric).
    std::string summary_csv = "scoring,suite,model,n,min,q1,median,q3,max\n";
    for (const std::string& scoring : scorings) {
        std::vector<report::BoxGroup> groups;
        for (const std::string& suite : suites) {
            report::BoxGroup group;
            group.label = suite;
            for (const std::string& model : config.models) {
                const auto sample = sample_of(suite, model, scoring);
                if (sample.empty()) continue;
                const auto s = report::five_number_summary(sample);
                group.boxes.push_back({model, s});
                summary_csv += scoring + "," + suite + "," + model + "," +
                               std::to_string(sample.size()) + "," + format_score(s.min) + "," +
                               format_score(s.q1) + "," + format_score(s.median) + "," +
                               format_score(s.q3) + "," + format_score(s.max) + "\n";
            }
            if (!group.boxes.empty()) groups.push_back(std::move(group));
        }
        if (!groups.empty())
            write_out(log, report_dir / (scoring + "_boxplot.svg"),
                      report::render_boxplot_svg(scoring + " by metric suite", scoring, groups,
                                                 0.0, 1.0));
    }
    write_out(log, report_dir / "score_summary.csv", summary_csv);

    // Significance tests per suite and scoring metric.
    std::string sig_csv = "scoring,suite,test,groups,statistic,p_value,significant\n";
    for (const std::string& scoring : scorings) {
        for (const std::string& suite : suites) {
            std::vector<std::vector<double>> samples;
            std::vector<std::string> names;
            for (const std::string& model : config.models) {
                auto v = sample_of(suite, model, scoring);
                if (!v.empty()) {
                    samples.push_back(std::move(v));
                    names.push_back(model);
                }
            }
            if (samples.size() < 2) continue;
            for (std::size_t i = 0; i < samples.size(); ++i) {
                for (std::size_t j = i + 1; j < samples.size(); ++j) {
                    const auto r = stats::mann_whitney(samples[i], samples[j], config.alpha);
                    sig_csv += scoring + "," + suite + ",mann-whitney," + names[i] + " vs " +
                               names[j] + "," + format_score(r.statistic) + "," +
                               format_score(r.p_value) + "," + (r.significant ? "1" : "0") + "\n";
                }
            }
            const auto kw = stats::kruskal_wallis(samples, config.alpha);
            std::string all_names;
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (i) all_names += '+';
                all_names += names[i];
            }
            sig_csv += scoring + "," + suite + ",kruskal-wallis," + all_names + "," +
                       format_score(kw.statistic) + "," + format_score(kw.p_value) + "," +
                       (kw.significant ? "1" : "0") + "\n";
        }
    }
    write_out(log, report_dir / "significance.csv", sig_csv);

    // Aggregated metric-rank distribution.
    if (!project_ranks.empty()) {
        const auto agg = report::aggregate_rankings(project_ranks);
        std::string rank_csv = "metric,projects,min,q1,median,q3,max\n";
        report::BoxGroup group;
        group.label = "importance rank";
        for (const std::string& metric : stats::importance_candidate_metrics()) {
            auto it = agg.find(metric);
            if (it == agg.end()) continue;
            const auto& s = it->second;
            rank_csv += metric + "," + std::to_string(project_ranks.size()) + "," +
                        format_double(s.min, 1) + "," + format_double(s.q1, 2) + "," +
                        format_double(s.median, 2) + "," + format_double(s.q3, 2) + "," +
                        format_double(s.max, 1) + "\n";
            group.boxes.push_back({metric, s});
        }
        write_out(log, report_dir / "rank_summary.csv", rank_csv);
        write_out(log, report_dir / "rank_boxplot.svg",
                  report::render_boxplot_svg("Importance rank per metric (lower is better)",
                                             "rank", {group}, 0.5,
                                             static_cast<double>(group.boxes.size()) + 0.5));
    }

    write_out(log, report_dir / "vif_overview.csv", vif_overview);
    return log;
}

}  // namespace defectlab::pipeline
