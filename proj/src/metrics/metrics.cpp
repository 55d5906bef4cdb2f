#include "defectlab/metrics/metrics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "defectlab/common/errors.hpp"
#include "defectlab/common/text.hpp"
#include "defectlab/javamodel/analysis.hpp"

namespace defectlab::metrics {

using javamodel::ClassEntity;
using javamodel::ProjectModel;

namespace {

/// Lines of `id`'s span that belong to nested/anonymous/local classes inside it.
std::vector<bool> excluded_lines(const ProjectModel& model, int id) {
    const ClassEntity& e = model.entity(id);
    const int span = e.end_line - e.start_line + 1;
    std::vector<bool> excluded(static_cast<std::size_t>(std::max(span, 0)), false);
    for (int d : model.descendants(id)) {
        const ClassEntity& de = model.entity(d);
        const int from = std::max(de.start_line, e.start_line);
        const int to = std::min(de.end_line, e.end_line);
        for (int l = from; l <= to; ++l)
            excluded[static_cast<std::size_t>(l - e.start_line)] = true;
    }
    return excluded;
}

}  // namespace

SizeDocs size_and_docs(const ProjectModel& model, int id) {
    const ClassEntity& e = model.entity(id);
    const javamodel::ParsedFile& file = model.file_of(id);
    const std::vector<bool> excluded = excluded_lines(model, id);

    SizeDocs out;
    long comment = 0, logical = 0;
    for (int l = e.start_line; l <= e.end_line; ++l) {
        if (excluded[static_cast<std::size_t>(l - e.start_line)]) continue;
        ++out.loc;
        if (l < static_cast<int>(file.lines.size())) {
            if (file.lines[static_cast<std::size_t>(l)].comment) ++comment;
            if (file.lines[static_cast<std::size_t>(l)].code) ++logical;
        }
    }
    out.cd = (comment + logical) == 0
                 ? 0.0
                 : static_cast<double>(comment) / static_cast<double>(comment + logical);
    for (const auto& f : e.fields)
        if (f.visibility == javamodel::Visibility::Public) ++out.npa;
    for (const auto& mth : e.methods)
        if (!mth.is_constructor && mth.visibility == javamodel::Visibility::Public) ++out.npm;
    return out;
}

Complexity complexity(const ProjectModel& model, int id) {
    const ClassEntity& e = model.entity(id);
    const javamodel::ParsedFile& file = model.file_of(id);
    const auto skips = javamodel::entity_skip_ranges(file);

    Complexity out;
    for (const auto& mth : e.methods) {
        if (!mth.has_body) {
            out.wmc += 1;  // declared method without a body still responds
            continue;
        }
        const auto stats = javamodel::analyze_structure(file, mth.body, skips);
        out.wmc += 1 + stats.decisions;
        out.nle = std::max(out.nle, static_cast<long>(stats.max_nesting));
    }
    for (const auto& blk : e.init_blocks) {
        const auto stats = javamodel::analyze_structure(file, blk.body, skips);
        out.wmc += 1 + stats.decisions;
        out.nle = std::max(out.nle, static_cast<long>(stats.max_nesting));
    }
    return out;
}

Inheritance inheritance(const ProjectModel& model, int id) {
    Inheritance out;
    // Longest resolvable ancestor path; the model guarantees acyclicity.
    std::map<int, long> memo;
    std::function<long(int)> depth = [&](int v) -> long {
        auto it = memo.find(v);
        if (it != memo.end()) return it->second;
        long best = 0;
        for (int sup : model.analysis[static_cast<std::size_t>(v)].resolved_supers)
            best = std::max(best, 1 + depth(sup));
        memo[v] = best;
        return best;
    };
    out.dit = depth(id);
    for (const auto& [child, parent] : model.inherits)
        if (parent == id) ++out.noc;
    return out;
}

Coupling coupling(const ProjectModel& model, int id) {
    Coupling out;
    for (const auto& [from, to] : model.uses) {
        if (from == id) ++out.cbo;
        if (to == id) ++out.cboi;
    }
    const ClassEntity& e = model.entity(id);
    std::set<javamodel::MethodKey> response;
    for (const auto& mth : e.methods)
        response.insert({id, mth.name, static_cast<int>(mth.params.size())});
    for (const auto& key : model.analysis[static_cast<std::size_t>(id)].callees)
        response.insert(key);
    out.rfc = static_cast<long>(response.size());
    return out;
}

long cohesion(const ProjectModel& model, int id) {
    const ClassEntity& e = model.entity(id);
    const auto& an = model.analysis[static_cast<std::size_t>(id)];
    const int methods = static_cast<int>(e.methods.size());
    const int fields = static_cast<int>(e.fields.size());
    if (methods == 0) return 0;

    std::vector<int> uf(static_cast<std::size_t>(methods + fields));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) {
            uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
            x = uf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto join = [&](int a, int b) { uf[static_cast<std::size_t>(find(a))] = find(b); };

    for (int mi = 0; mi < methods && mi < static_cast<int>(an.method_fields.size()); ++mi)
        for (int fi : an.method_fields[static_cast<std::size_t>(mi)]) join(mi, methods + fi);
    for (int mi = 0; mi < methods && mi < static_cast<int>(an.method_methods.size()); ++mi)
        for (int mj : an.method_methods[static_cast<std::size_t>(mi)]) join(mi, mj);

    std::set<int> roots;
    for (int mi = 0; mi < methods; ++mi) roots.insert(find(mi));
    return static_cast<long>(roots.size());
}

MetricVector metric_vector(const ProjectModel& model, int id) {
    MetricVector v;
    v.fqn = model.entity(id).fqn;
    const SizeDocs sd = size_and_docs(model, id);
    const Complexity cx = complexity(model, id);
    const Inheritance ih = inheritance(model, id);
    const Coupling cp = coupling(model, id);
    v.loc = sd.loc;
    v.cd = sd.cd;
    v.npa = sd.npa;
    v.npm = sd.npm;
    v.wmc = cx.wmc;
    v.nle = cx.nle;
    v.dit = ih.dit;
    v.noc = ih.noc;
    v.cbo = cp.cbo;
    v.cboi = cp.cboi;
    v.rfc = cp.rfc;
    v.lcom5 = cohesion(model, id);
    return v;
}

std::vector<MetricVector> compute_all(const ProjectModel& model) {
    std::vector<MetricVector> out;
    for (int id = 0; id < model.entity_count(); ++id)
        if (model.row_eligible(id)) out.push_back(metric_vector(model, id));
    std::sort(out.begin(), out.end(),
              [](const MetricVector& a, const MetricVector& b) { return a.fqn < b.fqn; });
    return out;
}

std::string to_csv(const std::vector<MetricVector>& vectors) {
    std::string out = "fqn,LOC,WMC,DIT,NOC,CBO,RFC,LCOM5,NPA,NPM,NLE,CBOI,CD\n";
    for (const MetricVector& v : vectors) {
        out += csv_quote(v.fqn);
        for (long x : {v.loc, v.wmc, v.dit, v.noc, v.cbo, v.rfc, v.lcom5, v.npa, v.npm, v.nle,
                       v.cboi})
            out += "," + std::to_string(x);
        out += "," + format_double(v.cd, 6) + "\n";
    }
    return out;
}

namespace {

long parse_count(const std::string& text, const std::string& source, int line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw MalformedCsv(source, line, "not a count: " + text);
    }
}

}  // namespace

std::vector<MetricVector> from_csv(const std::string& content, const std::string& source_name) {
    const auto lines = split_lines(content);
    if (lines.empty() || lines[0] != "fqn,LOC,WMC,DIT,NOC,CBO,RFC,LCOM5,NPA,NPM,NLE,CBOI,CD")
        throw MalformedCsv(source_name, 1, "bad metrics header");
    std::vector<MetricVector> out;
    std::vector<std::string> fields;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        if (!csv_split(lines[li], fields) || fields.size() != 13)
            throw MalformedCsv(source_name, static_cast<int>(li + 1), "bad metrics row");
        const int line_no = static_cast<int>(li + 1);
        MetricVector v;
        v.fqn = fields[0];
        v.loc = parse_count(fields[1], source_name, line_no);
        v.wmc = parse_count(fields[2], source_name, line_no);
        v.dit = parse_count(fields[3], source_name, line_no);
        v.noc = parse_count(fields[4], source_name, line_no);
        v.cbo = parse_count(fields[5], source_name, line_no);
        v.rfc = parse_count(fields[6], source_name, line_no);
        v.lcom5 = parse_count(fields[7], source_name, line_no);
        v.npa = parse_count(fields[8], source_name, line_no);
        v.npm = parse_count(fields[9], source_name, line_no);
        v.nle = parse_count(fields[10], source_name, line_no);
        v.cboi = parse_count(fields[11], source_name, line_no);
        try {
            v.cd = std::stod(fields[12]);
        } catch (const std::exception&) {
            throw MalformedCsv(source_name, line_no, "not a number: " + fields[12]);
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace defectlab::metrics
