#pragma once

#include <string>
#include <utility>
#include <vector>

#include "defectlab/javamodel/entity.hpp"

namespace defectlab::javamodel {

/// One raw reference found while walking a code token range. Names are as
/// written; resolution against the snapshot happens in the model builder.
struct RefEvent {
    enum class Kind {
        Chain,      // dotted name, possibly ending in a call: segments[, argc]
        FieldRef,   // read/write of one of the enclosing class's own fields
        OwnCall,    // unqualified or this-qualified call ("this"/"super" name = ctor)
        SuperCall,  // super.m(...)
        NewObject,  // instantiation: receiver_type, argc, optional chained call
    };
    Kind kind;
    std::vector<std::string> segments;  // Chain: full dotted chain
    std::string name;                   // FieldRef/OwnCall/SuperCall: member name
    std::string receiver_type;          // NewObject: declared type; VarCall via Chain
    std::string var_type;               // Chain call with a typed variable receiver
    int argc = -1;
    bool call = false;
    bool type_position = false;  // failure should be recorded as unresolved
    std::string followup_method;  // NewObject: chained .m(...) after the ctor
    int followup_argc = -1;
};

/// Declared names visible to a scan: parameters of the enclosing method plus
/// the class's own fields (name -> declared type).
struct ScanContext {
    const std::vector<Param>* params = nullptr;
    const std::vector<FieldDecl>* fields = nullptr;
};

std::vector<RefEvent> scan_references(const ParsedFile& file, TokenRange range,
                                      const ScanContext& ctx);

struct StructureStats {
    int decisions = 0;    // if/for/while/do/case/catch/ternary/&&/||
    int max_nesting = 0;  // if/switch/loop/try nesting, else-if stays level
};

/// Token ranges that belong to other entities (anonymous bodies, local
/// classes) and must be skipped when scanning a method for complexity.
std::vector<std::pair<int, int>> entity_skip_ranges(const ParsedFile& file);

StructureStats analyze_structure(const ParsedFile& file, TokenRange range,
                                 const std::vector<std::pair<int, int>>& skip_ranges);

}  // namespace defectlab::javamodel
