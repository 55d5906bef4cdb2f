#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "defectlab/common/diagnostics.hpp"
#include "defectlab/javamodel/entity.hpp"

namespace defectlab::javamodel {

/// Identity of one method for coupling purposes: owner entity, name, arity.
struct MethodKey {
    int entity = -1;
    std::string name;
    int arity = 0;
    auto operator<=>(const MethodKey&) const = default;
};

struct InvokeEdge {
    int caller = -1;
    std::string caller_member;  // method signature, "<init#k>" or "<field:name>"
    MethodKey callee;
    auto operator<=>(const InvokeEdge&) const = default;
};

/// Per-class reference analysis used by the cohesion and coupling metrics.
struct ClassAnalysis {
    std::vector<std::set<int>> method_fields;   // method idx -> own field idxs touched
    std::vector<std::set<int>> method_methods;  // method idx -> own method idxs called
    std::set<MethodKey> callees;                // distinct resolved callees, class-wide
    std::vector<int> resolved_supers;           // declared order, resolvable only
};

/// Resolved snapshot model. Edges connect only row-eligible entities: named
/// classes whose enclosing chain is free of anonymous/local classes. Code in
/// anonymous and local classes is attributed to the nearest eligible ancestor.
class ProjectModel {
public:
    struct EntityRef {
        int file = -1;
        int index = -1;
    };

    std::vector<ParsedFile> files;
    std::vector<EntityRef> refs;                // global id -> location
    std::vector<int> parents;                   // global id -> global parent id or -1
    std::vector<bool> eligible;                 // row-eligible flag per global id
    std::unordered_map<std::string, int> by_fqn;  // eligible entities only
    std::set<std::pair<int, int>> inherits;     // child -> direct supertype
    std::set<std::pair<int, int>> uses;         // user -> used, no self edges
    std::set<InvokeEdge> invokes;
    std::set<std::string> unresolved;
    std::vector<ClassAnalysis> analysis;        // per global id, empty if not eligible
    Diagnostics diagnostics;

    int entity_count() const { return static_cast<int>(refs.size()); }
    const ClassEntity& entity(int id) const {
        const EntityRef& r = refs[static_cast<std::size_t>(id)];
        return files[static_cast<std::size_t>(r.file)]
            .entities[static_cast<std::size_t>(r.index)];
    }
    const ParsedFile& file_of(int id) const {
        return files[static_cast<std::size_t>(refs[static_cast<std::size_t>(id)].file)];
    }
    bool row_eligible(int id) const { return eligible[static_cast<std::size_t>(id)]; }

    /// Global ids of entities whose line spans lie inside `id`'s span
    /// (direct and transitive children).
    std::vector<int> descendants(int id) const;
};

/// Resolves cross-class references snapshot-internally and assembles the
/// model. Throws ModelCycle when the inheritance graph has a cycle.
ProjectModel build_project_model(std::vector<ParsedFile> files);

}  // namespace defectlab::javamodel
