#include "defectlab/javamodel/model.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "defectlab/common/errors.hpp"
#include "defectlab/javamodel/analysis.hpp"
#include "defectlab/javamodel/parser.hpp"

namespace defectlab::javamodel {

std::vector<int> ProjectModel::descendants(int id) const {
    std::vector<int> out;
    std::vector<int> stack;
    for (int other = 0; other < entity_count(); ++other)
        if (parents[static_cast<std::size_t>(other)] == id) stack.push_back(other);
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        for (int other = 0; other < entity_count(); ++other)
            if (parents[static_cast<std::size_t>(other)] == cur) stack.push_back(other);
    }
    return out;
}

namespace {

struct Builder {
    ProjectModel m;
    std::unordered_map<std::string, std::vector<int>> by_simple;  // eligible only

    void index_entities() {
        for (int fi = 0; fi < static_cast<int>(m.files.size()); ++fi) {
            const ParsedFile& file = m.files[static_cast<std::size_t>(fi)];
            const int base = m.entity_count();
            for (int ei = 0; ei < static_cast<int>(file.entities.size()); ++ei) {
                const ClassEntity& e = file.entities[static_cast<std::size_t>(ei)];
                m.refs.push_back({fi, ei});
                m.parents.push_back(e.parent < 0 ? -1 : base + e.parent);
                m.eligible.push_back(false);
            }
        }
        for (int id = 0; id < m.entity_count(); ++id) {
            bool ok = true;
            for (int cur = id; cur >= 0; cur = m.parents[static_cast<std::size_t>(cur)]) {
                if (!m.entity(cur).is_named()) {
                    ok = false;
                    break;
                }
            }
            m.eligible[static_cast<std::size_t>(id)] = ok;
            if (!ok) continue;
            const std::string& fqn = m.entity(id).fqn;
            auto [it, inserted] = m.by_fqn.emplace(fqn, id);
            if (!inserted) {
                add_diag(m.diagnostics, Severity::Error, m.entity(id).file_path,
                         m.entity(id).start_line,
                         "duplicate fully qualified name: " + fqn + " (first seen in " +
                             m.entity(it->second).file_path + ")");
                continue;
            }
            by_simple[m.entity(id).simple_name].push_back(id);
        }
        m.analysis.resize(static_cast<std::size_t>(m.entity_count()));
    }

    bool exists(const std::string& fqn, int* id) const {
        auto it = m.by_fqn.find(fqn);
        if (it == m.by_fqn.end()) return false;
        *id = it->second;
        return true;
    }

    /// Snapshot-internal resolution of a type name as written (generics
    /// already stripped). Returns the entity id, or nullopt; sets *ambiguous
    /// when several candidates tie within the winning scope.
    std::optional<int> resolve(const std::string& name, const ParsedFile& file, int from,
                               bool* ambiguous) const {
        *ambiguous = false;
        if (name.empty() || is_primitive_type_name(name) || name == "void") return std::nullopt;
        int id;
        const auto dot = name.find('.');
        if (dot != std::string::npos) {
            std::vector<int> hits;
            auto add_hit = [&](const std::string& fqn) {
                int found;
                if (exists(fqn, &found) &&
                    std::find(hits.begin(), hits.end(), found) == hits.end())
                    hits.push_back(found);
            };
            add_hit(name);
            if (!file.package.empty()) add_hit(file.package + "." + name);
            const std::string head = name.substr(0, dot);
            for (const auto& [simple, fqn] : file.named_imports)
                if (simple == head) add_hit(fqn + name.substr(dot));
            for (int cur = from; cur >= 0; cur = m.parents[static_cast<std::size_t>(cur)])
                add_hit(m.entity(cur).fqn + "." + name);
            if (hits.size() == 1) return hits[0];
            if (hits.size() > 1) {
                *ambiguous = true;
                return std::nullopt;
            }
            return std::nullopt;
        }
        // Enclosing scopes, innermost first.
        for (int cur = from; cur >= 0; cur = m.parents[static_cast<std::size_t>(cur)]) {
            if (exists(m.entity(cur).fqn + "." + name, &id)) return id;
            if (m.entity(cur).simple_name == name && m.row_eligible(cur)) return cur;
        }
        // Explicit import binds the name even when the target is external.
        for (const auto& [simple, fqn] : file.named_imports) {
            if (simple == name) {
                if (exists(fqn, &id)) return id;
                return std::nullopt;
            }
        }
        // Same package.
        if (exists(file.package.empty() ? name : file.package + "." + name, &id)) return id;
        // Wildcard imports.
        std::vector<int> hits;
        for (const std::string& pkg : file.wildcard_imports) {
            if (exists(pkg + "." + name, &id) &&
                std::find(hits.begin(), hits.end(), id) == hits.end())
                hits.push_back(id);
        }
        if (hits.size() == 1) return hits[0];
        if (hits.size() > 1) {
            *ambiguous = true;
            return std::nullopt;
        }
        return std::nullopt;
    }

    // ---- edge construction ---------------------------------------------

    int self_id = -1;
    const ParsedFile* self_file = nullptr;

    void add_use(int target) {
        if (target != self_id) m.uses.insert({self_id, target});
    }

    std::optional<int> resolve_type(const std::string& name, bool type_position) {
        bool ambiguous = false;
        auto r = resolve(name, *self_file, self_id, &ambiguous);
        if (r) return r;
        if (ambiguous) {
            add_diag(m.diagnostics, Severity::Warning, m.entity(self_id).file_path, 0,
                     "ambiguous reference '" + name + "' from " + m.entity(self_id).fqn);
            m.unresolved.insert(name);
        } else if (type_position) {
            m.unresolved.insert(name);
        }
        return std::nullopt;
    }

    /// Finds a method by name in `start` or the first match walking up the
    /// resolvable supertype chain (declared order, breadth-first). Exact
    /// arity wins; a name match is the fallback.
    std::optional<MethodKey> find_method(int start, const std::string& name, int argc,
                                         bool ctor_only = false) const {
        std::vector<int> queue{start};
        std::size_t qi = 0;
        std::set<int> seen{start};
        while (qi < queue.size()) {
            const int cur = queue[qi++];
            const ClassEntity& e = m.entity(cur);
            int name_match = -1;
            for (int k = 0; k < static_cast<int>(e.methods.size()); ++k) {
                const MethodDecl& md = e.methods[static_cast<std::size_t>(k)];
                if (ctor_only && !md.is_constructor) continue;
                if (md.name != name) continue;
                if (static_cast<int>(md.params.size()) == argc)
                    return MethodKey{cur, md.name, argc};
                if (name_match < 0) name_match = k;
            }
            if (name_match >= 0) {
                const MethodDecl& md = e.methods[static_cast<std::size_t>(name_match)];
                return MethodKey{cur, md.name, static_cast<int>(md.params.size())};
            }
            for (int sup : m.analysis[static_cast<std::size_t>(cur)].resolved_supers)
                if (seen.insert(sup).second) queue.push_back(sup);
        }
        return std::nullopt;
    }

    void link_supertypes(int id) {
        self_id = id;
        self_file = &m.file_of(id);
        const ClassEntity& e = m.entity(id);
        ClassAnalysis& an = m.analysis[static_cast<std::size_t>(id)];
        an.method_fields.resize(e.methods.size());
        an.method_methods.resize(e.methods.size());
        for (const std::string& sup : e.supertype_names) {
            auto r = resolve_type(sup, /*type_position=*/true);
            if (r && *r != id) {
                m.inherits.insert({id, *r});
                an.resolved_supers.push_back(*r);
                add_use(*r);
            }
        }
        for (const std::string& aux : e.header_type_refs)
            if (auto r = resolve_type(aux, true)) add_use(*r);
    }

    void process_entity(int id) {
        self_id = id;
        self_file = &m.file_of(id);
        const ClassEntity& e = m.entity(id);

        // Annotations resolve like types but never pollute `unresolved`
        // (externals like Override would drown it).
        for (const std::string& a : e.annotation_refs)
            if (auto r = resolve_type(a, false)) add_use(*r);

        // Declared member types.
        for (const FieldDecl& fd : e.fields) {
            if (auto r = resolve_type(fd.type_name, true)) add_use(*r);
            for (const std::string& aux : fd.aux_type_refs)
                if (auto r = resolve_type(aux, true)) add_use(*r);
        }
        for (const MethodDecl& md : e.methods) {
            if (!md.return_type.empty())
                if (auto r = resolve_type(md.return_type, true)) add_use(*r);
            for (const Param& p : md.params)
                if (auto r = resolve_type(p.type_name, true)) add_use(*r);
            for (const std::string& aux : md.aux_type_refs)
                if (auto r = resolve_type(aux, true)) add_use(*r);
        }

        // Code units.
        for (int k = 0; k < static_cast<int>(e.methods.size()); ++k) {
            const MethodDecl& md = e.methods[static_cast<std::size_t>(k)];
            if (!md.has_body) continue;
            ScanContext ctx{&md.params, &e.fields};
            process_unit(id, scan_references(*self_file, md.body, ctx), k, md.signature);
        }
        int block_no = 0;
        for (const InitBlock& ib : e.init_blocks) {
            ScanContext ctx{nullptr, &e.fields};
            process_unit(id, scan_references(*self_file, ib.body, ctx), -1,
                         "<init#" + std::to_string(block_no++) + ">");
        }
        for (const FieldDecl& fd : e.fields) {
            if (!fd.has_initializer) continue;
            ScanContext ctx{nullptr, &e.fields};
            process_unit(id, scan_references(*self_file, fd.initializer, ctx), -1,
                         "<field:" + fd.name + ">");
        }
        for (const TokenRange& args : e.enum_constant_args) {
            ScanContext ctx{nullptr, &e.fields};
            process_unit(id, scan_references(*self_file, args, ctx), -1, "<enum-args>");
        }
    }

    void process_unit(int id, const std::vector<RefEvent>& events, int method_idx,
                      const std::string& member_name) {
        const ClassEntity& e = m.entity(id);
        ClassAnalysis& an = m.analysis[static_cast<std::size_t>(id)];

        auto field_index = [&](const std::string& name) {
            for (int k = 0; k < static_cast<int>(e.fields.size()); ++k)
                if (e.fields[static_cast<std::size_t>(k)].name == name) return k;
            return -1;
        };
        auto own_method_index = [&](const std::string& name, int argc, bool ctor) {
            int name_match = -1;
            for (int k = 0; k < static_cast<int>(e.methods.size()); ++k) {
                const MethodDecl& md = e.methods[static_cast<std::size_t>(k)];
                if (ctor && !md.is_constructor) continue;
                if (!ctor && md.is_constructor) continue;
                if (md.name != name && !ctor) continue;
                if (static_cast<int>(md.params.size()) == argc) return k;
                if (name_match < 0) name_match = k;
            }
            return name_match;
        };
        auto add_invoke = [&](const MethodKey& key) {
            m.invokes.insert(InvokeEdge{id, member_name, key});
            an.callees.insert(key);
        };

        for (const RefEvent& ev : events) {
            switch (ev.kind) {
                case RefEvent::Kind::FieldRef: {
                    const int fi = field_index(ev.name);
                    if (fi >= 0 && method_idx >= 0)
                        an.method_fields[static_cast<std::size_t>(method_idx)].insert(fi);
                    break;
                }
                case RefEvent::Kind::OwnCall: {
                    const bool ctor = ev.name == "this";
                    const int mi = own_method_index(ctor ? e.simple_name : ev.name, ev.argc, ctor);
                    if (mi >= 0) {
                        const MethodDecl& md = e.methods[static_cast<std::size_t>(mi)];
                        if (method_idx >= 0)
                            an.method_methods[static_cast<std::size_t>(method_idx)].insert(mi);
                        add_invoke(MethodKey{id, md.name, static_cast<int>(md.params.size())});
                    } else if (!ctor) {
                        // inherited method?
                        bool walked = false;
                        for (int sup : an.resolved_supers) {
                            if (auto key = find_method(sup, ev.name, ev.argc)) {
                                add_invoke(*key);
                                walked = true;
                                break;
                            }
                        }
                        (void)walked;  // unresolved call targets are ignored
                    }
                    break;
                }
                case RefEvent::Kind::SuperCall: {
                    for (int sup : an.resolved_supers) {
                        if (ev.name == "super") {
                            const ClassEntity& se = m.entity(sup);
                            if (auto key = find_method(sup, se.simple_name, ev.argc, true)) {
                                add_invoke(*key);
                                break;
                            }
                        } else if (auto key = find_method(sup, ev.name, ev.argc)) {
                            add_invoke(*key);
                            break;
                        }
                    }
                    break;
                }
                case RefEvent::Kind::NewObject: {
                    auto r = resolve_type(ev.receiver_type, true);
                    if (!r) break;
                    add_use(*r);
                    if (auto key = find_method(*r, m.entity(*r).simple_name, ev.argc, true))
                        add_invoke(*key);
                    if (!ev.followup_method.empty())
                        if (auto key = find_method(*r, ev.followup_method, ev.followup_argc))
                            add_invoke(*key);
                    break;
                }
                case RefEvent::Kind::Chain: {
                    if (!ev.var_type.empty()) {
                        // typed variable receiver: v.m(...)
                        if (auto r = resolve_type(ev.var_type, false)) {
                            add_use(*r);
                            if (auto key = find_method(*r, ev.segments.back(), ev.argc))
                                add_invoke(*key);
                        }
                        break;
                    }
                    const std::size_t limit = ev.call ? ev.segments.size() - 1 : ev.segments.size();
                    std::string prefix;
                    bool resolved = false;
                    for (std::size_t k = 0; k < limit; ++k) {
                        if (k) prefix += '.';
                        prefix += ev.segments[k];
                        bool ambiguous = false;
                        auto r = resolve(prefix, *self_file, id, &ambiguous);
                        if (ambiguous) {
                            add_diag(m.diagnostics, Severity::Warning, e.file_path, 0,
                                     "ambiguous reference '" + prefix + "' from " + e.fqn);
                            m.unresolved.insert(prefix);
                            resolved = true;  // stop; do not record the longer chain
                            break;
                        }
                        if (r) {
                            add_use(*r);
                            if (ev.call && k + 1 == limit)
                                if (auto key = find_method(*r, ev.segments.back(), ev.argc))
                                    add_invoke(*key);
                            resolved = true;
                            break;
                        }
                    }
                    if (!resolved && ev.type_position && !ev.segments.empty()) {
                        std::string full = ev.segments.front();
                        for (std::size_t k = 1; k < limit; ++k) full += "." + ev.segments[k];
                        if (!is_primitive_type_name(full) && full != "void" && full != "var")
                            m.unresolved.insert(full);
                    }
                    break;
                }
            }
        }
    }

    void check_acyclic() {
        std::unordered_map<int, std::vector<int>> adj;
        for (const auto& [child, parent] : m.inherits) adj[child].push_back(parent);
        std::unordered_map<int, int> state;  // 0 unseen, 1 in stack, 2 done
        std::function<bool(int, std::vector<int>&)> dfs = [&](int v, std::vector<int>& path) {
            state[v] = 1;
            path.push_back(v);
            for (int w : adj[v]) {
                if (state[w] == 1) {
                    path.push_back(w);
                    return true;
                }
                if (state[w] == 0 && dfs(w, path)) return true;
            }
            path.pop_back();
            state[v] = 2;
            return false;
        };
        for (const auto& [child, parent] : m.inherits) {
            if (state[child] == 0) {
                std::vector<int> path;
                if (dfs(child, path)) {
                    std::string msg = "inheritance cycle:";
                    for (int v : path) msg += " " + m.entity(v).fqn;
                    throw ModelCycle(msg);
                }
            }
        }
    }
};

}  // namespace

ProjectModel build_project_model(std::vector<ParsedFile> files) {
    Builder b;
    b.m.files = std::move(files);
    for (const ParsedFile& f : b.m.files)
        for (const Diagnostic& d : f.diagnostics) b.m.diagnostics.push_back(d);
    b.index_entities();
    for (int id = 0; id < b.m.entity_count(); ++id)
        if (b.m.row_eligible(id)) b.link_supertypes(id);
    b.check_acyclic();
    for (int id = 0; id < b.m.entity_count(); ++id)
        if (b.m.row_eligible(id)) b.process_entity(id);
    return std::move(b.m);
}

}  // namespace defectlab::javamodel
