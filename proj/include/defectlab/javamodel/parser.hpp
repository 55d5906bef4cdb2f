#pragma once

#include <string>

#include "defectlab/javamodel/entity.hpp"

namespace defectlab::javamodel {

/// Parses one Java compilation unit into its type declarations. Anonymous and
/// local classes are extracted as entities of their own; their spans nest
/// inside the enclosing declaration. Malformed constructs degrade to
/// diagnostics plus partial results rather than exceptions.
ParsedFile parse_compilation_unit(std::string source, const std::string& path);

/// True when tokens starting at `i` (which must point at '<') form a balanced
/// generic argument/parameter list. Returns one past the closing '>' in `end`.
bool try_skip_generics(const std::vector<Token>& toks, int i, int* end);

/// Parses a possibly qualified, generic, array type reference starting at i.
/// Writes the dotted outer name (no generics, no brackets) and, when
/// `generic_args` is given, every type name appearing inside the generic
/// argument lists. Returns the index past the reference, or i when no type
/// reference starts there.
int scan_type_ref(const std::vector<Token>& toks, int i, std::string* name,
                  std::vector<std::string>* generic_args = nullptr);

/// Skips one annotation (@Name or @a.b.Name, optionally with arguments).
int skip_annotation_tokens(const std::vector<Token>& toks, int i);

/// Index one past the closer matching the opening ( [ { at i.
int skip_balanced_tokens(const std::vector<Token>& toks, int i);

bool is_java_keyword(std::string_view word);
bool is_primitive_type_name(std::string_view word);

}  // namespace defectlab::javamodel
