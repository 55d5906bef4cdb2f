#pragma once

#include <string>
#include <vector>

#include "defectlab/common/diagnostics.hpp"
#include "defectlab/javamodel/lexer.hpp"

namespace defectlab::javamodel {

enum class TypeKind { Class, Interface, Enum, Annotation };
enum class Nesting { TopLevel, Nested, Anonymous, Local };
enum class Visibility { Public, Protected, PackagePrivate, Private };

/// Half-open range of token indices into the owning file's token vector.
struct TokenRange {
    int begin = 0;
    int end = 0;
    bool empty() const { return begin >= end; }
};

struct FieldDecl {
    std::string name;
    std::string type_name;  // declared type, generics and array brackets stripped
    std::vector<std::string> aux_type_refs;  // type names from generic arguments
    Visibility visibility = Visibility::PackagePrivate;
    bool has_initializer = false;
    TokenRange initializer;  // tokens of the initializer expression, if any
    int line = 0;
};

struct Param {
    std::string type_name;
    std::string name;
};

struct MethodDecl {
    std::string name;
    std::string signature;  // name(Type1,Type2)
    Visibility visibility = Visibility::PackagePrivate;
    bool is_constructor = false;
    bool has_body = false;
    std::string return_type;  // empty for constructors
    std::vector<Param> params;
    std::vector<std::string> aux_type_refs;  // type names from generic arguments
    TokenRange body;  // tokens between the braces; empty when bodyless
    int line = 0;
};

struct InitBlock {
    bool is_static = false;
    TokenRange body;
};

struct ClassEntity {
    std::string fqn;
    std::string simple_name;
    TypeKind kind = TypeKind::Class;
    Nesting nesting = Nesting::TopLevel;
    std::string file_path;
    int start_line = 0;
    int end_line = 0;
    std::vector<std::string> supertype_names;  // extends/implements, as written (no generics)
    std::vector<std::string> header_type_refs;  // generic arguments of the supertype clauses
    std::vector<std::string> annotation_refs;   // annotations on this type and its members
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;  // includes constructors
    std::vector<InitBlock> init_blocks;
    std::vector<TokenRange> enum_constant_args;  // argument lists of enum constants
    int comment_lines = 0;  // lines in span containing comment content
    int logical_lines = 0;  // lines in span containing code
    int parent = -1;        // index of the enclosing entity within the file, -1 for top level
    TokenRange full_range;  // declaration start through closing brace
    TokenRange body_range;  // tokens between the body braces

    bool is_named() const { return nesting == Nesting::TopLevel || nesting == Nesting::Nested; }
};

struct ParsedFile {
    std::string path;
    std::string package;                          // "" for default package
    std::vector<std::pair<std::string, std::string>> named_imports;  // simple -> fqn
    std::vector<std::string> wildcard_imports;    // package prefixes
    std::vector<ClassEntity> entities;            // in source order, parents before children
    std::vector<Token> tokens;
    std::vector<LineInfo> lines;
    int line_count = 0;
    std::string source;  // owns the buffer the tokens view into
    Diagnostics diagnostics;
};

}  // namespace defectlab::javamodel
