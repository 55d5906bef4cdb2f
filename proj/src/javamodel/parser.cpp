#include "defectlab/javamodel/parser.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace defectlab::javamodel {

namespace {

const std::unordered_set<std::string_view> kModifiers = {
    "public", "private", "protected", "static", "final", "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "sealed"};

const std::unordered_set<std::string_view> kKeywords = {
    "abstract", "assert",   "boolean",  "break",      "byte",    "case",
    "catch",    "char",     "class",    "const",      "continue", "default",
    "do",       "double",   "else",     "enum",       "extends", "final",
    "finally",  "float",    "for",      "goto",       "if",      "implements",
    "import",   "instanceof", "int",    "interface",  "long",    "native",
    "new",      "package",  "private",  "protected",  "public",  "return",
    "short",    "static",   "strictfp", "super",      "switch",  "synchronized",
    "this",     "throw",    "throws",   "transient",  "try",     "void",
    "volatile", "while",    "var",      "record",     "sealed",  "permits",
    "yield",    "true",     "false",    "null"};

const std::unordered_set<std::string_view> kPrimitives = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "var"};

bool is_type_keyword(std::string_view w) {
    return w == "class" || w == "interface" || w == "enum";
}

bool word_at(const std::vector<Token>& toks, int i) {
    return i >= 0 && i < static_cast<int>(toks.size()) && toks[i].kind == TokenKind::Word;
}

bool word_at(const std::vector<Token>& toks, int i, std::string_view w) {
    return word_at(toks, i) && toks[i].text == w;
}

bool punct_at(const std::vector<Token>& toks, int i, std::string_view p) {
    return i >= 0 && i < static_cast<int>(toks.size()) && toks[i].kind == TokenKind::Punct &&
           toks[i].text == p;
}

/// Collects every type name appearing in the generic region [begin, end).
void collect_generic_names(const std::vector<Token>& toks, int begin, int end,
                           std::vector<std::string>* out) {
    int i = begin;
    while (i < end) {
        if (!word_at(toks, i) || is_java_keyword(toks[i].text) ||
            (i > 0 && punct_at(toks, i - 1, "."))) {
            ++i;
            continue;
        }
        std::string name(toks[i].text);
        ++i;
        while (punct_at(toks, i, ".") && word_at(toks, i + 1)) {
            name += '.';
            name += toks[i + 1].text;
            i += 2;
        }
        out->push_back(std::move(name));
    }
}

}  // namespace

bool is_java_keyword(std::string_view word) { return kKeywords.count(word) > 0; }
bool is_primitive_type_name(std::string_view word) { return kPrimitives.count(word) > 0; }

bool try_skip_generics(const std::vector<Token>& toks, int i, int* end) {
    const int n = static_cast<int>(toks.size());
    if (i >= n || toks[i].text != "<") return false;
    int depth = 0;
    int steps = 0;
    for (int j = i; j < n; ++j) {
        if (++steps > 512) return false;
        const Token& tk = toks[j];
        if (tk.kind == TokenKind::Punct) {
            const std::string_view s = tk.text;
            if (s == "<") {
                ++depth;
            } else if (s == ">") {
                if (--depth == 0) {
                    *end = j + 1;
                    return true;
                }
            } else if (s == "." || s == "," || s == "?" || s == "&" || s == "[" ||
                       s == "]" || s == "@") {
                // type-argument punctuation
            } else {
                return false;
            }
        } else if (tk.kind != TokenKind::Word) {
            return false;  // literals never appear in type arguments
        }
    }
    return false;
}

int skip_balanced_tokens(const std::vector<Token>& toks, int i) {
    const int n = static_cast<int>(toks.size());
    int depth = 0;
    for (int j = i; j < n; ++j) {
        if (toks[j].kind != TokenKind::Punct) continue;
        const std::string_view s = toks[j].text;
        if (s == "(" || s == "[" || s == "{")
            ++depth;
        else if (s == ")" || s == "]" || s == "}") {
            if (--depth == 0) return j + 1;
        }
    }
    return n;
}

int skip_annotation_tokens(const std::vector<Token>& toks, int i) {
    ++i;  // '@'
    while (word_at(toks, i)) {
        ++i;
        if (punct_at(toks, i, ".") && word_at(toks, i + 1))
            ++i;
        else
            break;
    }
    if (punct_at(toks, i, "(")) i = skip_balanced_tokens(toks, i);
    return i;
}

int scan_type_ref(const std::vector<Token>& toks, int i, std::string* name,
                  std::vector<std::string>* generic_args) {
    while (punct_at(toks, i, "@")) i = skip_annotation_tokens(toks, i);
    if (!word_at(toks, i)) return i;
    std::string result(toks[i].text);
    ++i;
    while (true) {
        int end;
        if (punct_at(toks, i, "<") && try_skip_generics(toks, i, &end)) {
            if (generic_args) collect_generic_names(toks, i + 1, end - 1, generic_args);
            i = end;
            continue;
        }
        if (punct_at(toks, i, ".") && word_at(toks, i + 1)) {
            result += '.';
            result += toks[i + 1].text;
            i += 2;
            continue;
        }
        break;
    }
    while (true) {
        while (punct_at(toks, i, "@")) i = skip_annotation_tokens(toks, i);
        if (punct_at(toks, i, "[") && punct_at(toks, i + 1, "]"))
            i += 2;
        else if (punct_at(toks, i, ".") && punct_at(toks, i + 1, ".") && punct_at(toks, i + 2, "."))
            i += 3;  // varargs ellipsis
        else
            break;
    }
    *name = std::move(result);
    return i;
}

namespace {

class Parser {
public:
    explicit Parser(ParsedFile& out)
        : f_(out), t_(out.tokens), n_(static_cast<int>(out.tokens.size())) {}

    void run() {
        int i = parse_package_and_imports(0);
        while (i < n_) {
            if (is_punct(i, ";")) {
                ++i;
                continue;
            }
            const int next = parse_member_or_type(i, -1, Nesting::TopLevel);
            if (next <= i) {
                diag(i, "unexpected token at top level: " + std::string(text(i)));
                ++i;
            } else {
                i = next;
            }
        }
    }

private:
    ParsedFile& f_;
    const std::vector<Token>& t_;
    const int n_;
    std::unordered_map<int, int> anon_counter_;
    std::unordered_map<std::string, int> local_dups_;

    std::string_view text(int i) const { return i < n_ ? t_[i].text : std::string_view(); }
    int line(int i) const {
        if (i < n_) return t_[i].line;
        return f_.line_count > 0 ? f_.line_count : 1;
    }
    bool is_word(int i) const { return word_at(t_, i); }
    bool is_word(int i, std::string_view w) const { return word_at(t_, i, w); }
    bool is_punct(int i, std::string_view p) const { return punct_at(t_, i, p); }

    void diag(int i, std::string msg) {
        add_diag(f_.diagnostics, Severity::Warning, f_.path, line(i), std::move(msg));
    }

    ClassEntity& ent(int idx) { return f_.entities[static_cast<std::size_t>(idx)]; }

    struct Mods {
        bool is_public = false, is_private = false, is_protected = false, is_static = false;
    };

    int skip_mods_and_annotations(int i, Mods* mods, std::vector<std::string>* annotations) {
        while (i < n_) {
            if (is_punct(i, "@") && !is_word(i + 1, "interface")) {
                if (annotations) {
                    int j = i + 1;
                    std::string name;
                    while (is_word(j)) {
                        name += text(j);
                        ++j;
                        if (is_punct(j, ".") && is_word(j + 1)) {
                            name += '.';
                            ++j;
                        } else {
                            break;
                        }
                    }
                    if (!name.empty()) annotations->push_back(std::move(name));
                }
                i = skip_annotation_tokens(t_, i);
                continue;
            }
            if (is_word(i) && kModifiers.count(text(i))) {
                if (text(i) == "public") mods->is_public = true;
                if (text(i) == "private") mods->is_private = true;
                if (text(i) == "protected") mods->is_protected = true;
                if (text(i) == "static") mods->is_static = true;
                ++i;
                continue;
            }
            if (is_word(i, "non") && is_punct(i + 1, "-") && is_word(i + 2, "sealed")) {
                i += 3;
                continue;
            }
            break;
        }
        return i;
    }

    int parse_package_and_imports(int i) {
        while (i < n_) {
            // Package annotations precede `package`; anything else annotated
            // is a type declaration and stays untouched.
            int after_annotations = i;
            while (is_punct(after_annotations, "@"))
                after_annotations = skip_annotation_tokens(t_, after_annotations);
            if (is_word(after_annotations, "package")) {
                i = after_annotations;
                std::string name;
                ++i;
                while (is_word(i)) {
                    name += text(i);
                    ++i;
                    if (is_punct(i, ".")) {
                        name += '.';
                        ++i;
                    } else {
                        break;
                    }
                }
                f_.package = name;
                if (is_punct(i, ";")) ++i;
            } else if (is_word(i, "import")) {
                ++i;
                if (is_word(i, "static")) ++i;
                std::string name;
                bool wildcard = false;
                while (i < n_) {
                    if (is_word(i)) {
                        name += text(i);
                        ++i;
                    } else if (is_punct(i, ".")) {
                        if (is_punct(i + 1, "*")) {
                            wildcard = true;
                            i += 2;
                            break;
                        }
                        name += '.';
                        ++i;
                    } else {
                        break;
                    }
                }
                if (wildcard) {
                    f_.wildcard_imports.push_back(name);
                } else if (!name.empty()) {
                    const auto dot = name.rfind('.');
                    const std::string simple =
                        dot == std::string::npos ? name : name.substr(dot + 1);
                    f_.named_imports.emplace_back(simple, name);
                }
                if (is_punct(i, ";")) ++i;
            } else {
                break;
            }
        }
        return i;
    }

    int parse_member_or_type(int i, int parent, Nesting nesting_if_type) {
        const int decl_start = i;
        Mods mods;
        std::vector<std::string> annotations;
        i = skip_mods_and_annotations(i, &mods, &annotations);
        if (i >= n_) return i;

        const bool is_type = (is_word(i) && is_type_keyword(text(i))) ||
                             (is_punct(i, "@") && is_word(i + 1, "interface")) ||
                             (is_word(i, "record") && is_word(i + 1) && is_punct(i + 2, "("));
        if (is_type) {
            const int next = parse_type_decl(decl_start, i, parent, nesting_if_type);
            // annotations on a type declaration belong to the declared entity
            if (!annotations.empty() && !f_.entities.empty()) {
                for (auto& e : f_.entities) {
                    if (e.full_range.begin == decl_start && e.parent == parent) {
                        for (auto& a : annotations) e.annotation_refs.push_back(std::move(a));
                        break;
                    }
                }
            }
            return next;
        }

        if (parent < 0) return decl_start;  // top level allows only type declarations
        for (auto& a : annotations) ent(parent).annotation_refs.push_back(std::move(a));

        if (is_punct(i, "{")) {
            InitBlock block;
            block.is_static = mods.is_static;
            const int close = skip_balanced_tokens(t_, i);
            block.body = {i + 1, close - 1};
            ent(parent).init_blocks.push_back(block);
            scan_code_range(i + 1, close - 1, parent);
            return close;
        }

        i = skip_generics_or_next(i);  // generic method type parameters

        if (is_word(i) && text(i) == ent(parent).simple_name && is_punct(i + 1, "(")) {
            return parse_method(decl_start, i, parent, mods, /*is_ctor=*/true, "", {});
        }

        std::string type_name;
        std::vector<std::string> type_args;
        const int after_type = scan_type_ref(t_, i, &type_name, &type_args);
        if (after_type == i) {
            diag(i, "cannot parse member declaration");
            return decl_start;
        }
        i = after_type;

        if (is_word(i) && is_punct(i + 1, "(")) {
            return parse_method(decl_start, i, parent, mods, /*is_ctor=*/false, type_name,
                                std::move(type_args));
        }
        if (is_word(i)) {
            return parse_fields(decl_start, i, parent, mods, type_name, std::move(type_args));
        }
        diag(i, "cannot parse member declaration");
        return decl_start;
    }

    int skip_generics_or_next(int i) {
        int end;
        if (is_punct(i, "<") && try_skip_generics(t_, i, &end)) return end;
        return i;
    }

    Visibility effective_visibility(const Mods& mods, const ClassEntity& owner) const {
        if (mods.is_private) return Visibility::Private;
        if (mods.is_protected) return Visibility::Protected;
        if (mods.is_public) return Visibility::Public;
        if (owner.kind == TypeKind::Interface || owner.kind == TypeKind::Annotation)
            return Visibility::Public;  // implicit
        return Visibility::PackagePrivate;
    }

    int parse_method(int decl_start, int name_idx, int parent, const Mods& mods, bool is_ctor,
                     std::string return_type, std::vector<std::string> aux_refs) {
        MethodDecl m;
        m.name = std::string(text(name_idx));
        m.is_constructor = is_ctor;
        m.return_type = std::move(return_type);
        m.line = line(decl_start);
        m.visibility = effective_visibility(mods, ent(parent));
        m.aux_type_refs = std::move(aux_refs);

        int i = name_idx + 1;  // '('
        const int params_end = skip_balanced_tokens(t_, i);
        int j = i + 1;
        while (j < params_end - 1) {
            while (is_punct(j, "@")) j = skip_annotation_tokens(t_, j);
            if (is_word(j, "final")) {
                ++j;
                continue;
            }
            std::string ptype;
            const int after = scan_type_ref(t_, j, &ptype, &m.aux_type_refs);
            if (after == j) {
                ++j;
                continue;
            }
            j = after;
            std::string pname;
            if (is_word(j)) {
                pname = std::string(text(j));
                ++j;
                while (is_punct(j, "[") && is_punct(j + 1, "]")) j += 2;
            }
            if (ptype != "this") m.params.push_back({ptype, pname});  // skip receiver parameter
            if (is_punct(j, ","))
                ++j;
            else if (j < params_end - 1 && !is_word(j) && !is_punct(j, "@"))
                ++j;
        }
        i = params_end;

        m.signature = m.name + "(";
        for (std::size_t k = 0; k < m.params.size(); ++k) {
            if (k) m.signature += ',';
            m.signature += m.params[k].type_name;
        }
        m.signature += ")";

        if (is_word(i, "throws")) {
            ++i;
            while (true) {
                std::string tn;
                const int after = scan_type_ref(t_, i, &tn);
                if (after == i) break;
                i = after;
                if (is_punct(i, ","))
                    ++i;
                else
                    break;
            }
        }
        if (is_word(i, "default")) {  // annotation member default value
            while (i < n_ && !is_punct(i, ";")) {
                if (is_punct(i, "(") || is_punct(i, "{") || is_punct(i, "["))
                    i = skip_balanced_tokens(t_, i);
                else
                    ++i;
            }
        }
        if (is_punct(i, "{")) {
            const int close = skip_balanced_tokens(t_, i);
            m.has_body = true;
            m.body = {i + 1, close - 1};
            ent(parent).methods.push_back(std::move(m));
            scan_code_range(i + 1, close - 1, parent);
            return close;
        }
        if (is_punct(i, ";")) ++i;
        ent(parent).methods.push_back(std::move(m));
        return i;
    }

    int parse_fields(int decl_start, int name_idx, int parent, const Mods& mods,
                     const std::string& type_name, std::vector<std::string> aux_refs) {
        int i = name_idx;
        while (i < n_) {
            if (!is_word(i)) break;
            FieldDecl field;
            field.name = std::string(text(i));
            field.type_name = type_name;
            field.aux_type_refs = aux_refs;
            field.line = line(decl_start);
            field.visibility = effective_visibility(mods, ent(parent));
            ++i;
            while (is_punct(i, "[") && is_punct(i + 1, "]")) i += 2;
            if (is_punct(i, "=")) {
                ++i;
                const int init_begin = i;
                int depth = 0;
                while (i < n_) {
                    if (t_[i].kind == TokenKind::Punct) {
                        const std::string_view s = t_[i].text;
                        if (s == "(" || s == "[" || s == "{") ++depth;
                        if (s == ")" || s == "]" || s == "}") --depth;
                        if (depth == 0 && (s == "," || s == ";")) break;
                    }
                    ++i;
                }
                field.has_initializer = true;
                field.initializer = {init_begin, i};
                ent(parent).fields.push_back(std::move(field));
                scan_code_range(init_begin, i, parent);
            } else {
                ent(parent).fields.push_back(std::move(field));
            }
            if (is_punct(i, ",")) {
                ++i;
                continue;
            }
            if (is_punct(i, ";")) ++i;
            break;
        }
        return i;
    }

    int parse_type_decl(int decl_start, int kw_idx, int parent, Nesting nesting) {
        TypeKind kind = TypeKind::Class;
        int i = kw_idx;
        if (is_punct(i, "@")) {
            kind = TypeKind::Annotation;
            i += 2;  // '@' 'interface'
        } else if (is_word(i, "interface")) {
            kind = TypeKind::Interface;
            ++i;
        } else if (is_word(i, "enum")) {
            kind = TypeKind::Enum;
            ++i;
        } else {
            ++i;  // 'class' or 'record'
        }
        if (!is_word(i)) {
            diag(i, "missing type name");
            return i;
        }
        const std::string name(text(i));
        ++i;

        const int idx = new_entity(parent, nesting, kind, name, line(decl_start));

        i = skip_generics_or_next(i);
        if (is_punct(i, "(")) i = skip_balanced_tokens(t_, i);  // record components

        while (i < n_ && !is_punct(i, "{")) {
            if (is_word(i, "extends") || is_word(i, "implements") || is_word(i, "permits")) {
                const bool record_supers = !is_word(i, "permits");
                ++i;
                while (true) {
                    std::string tn;
                    std::vector<std::string> args;
                    const int after = scan_type_ref(t_, i, &tn, &args);
                    if (after == i) break;
                    i = after;
                    if (record_supers) {
                        ent(idx).supertype_names.push_back(tn);
                        for (auto& a : args) ent(idx).header_type_refs.push_back(std::move(a));
                    }
                    if (is_punct(i, ","))
                        ++i;
                    else
                        break;
                }
            } else {
                ++i;
            }
        }
        if (!is_punct(i, "{")) {
            diag(i, "missing type body for " + name);
            finish_entity(idx, decl_start, i);
            return i;
        }
        const int close = parse_type_body(i, idx);
        finish_entity(idx, decl_start, close);
        return close;
    }

    int new_entity(int parent, Nesting nesting, TypeKind kind, const std::string& simple_name,
                   int start_line) {
        ClassEntity e;
        e.kind = kind;
        e.nesting = nesting;
        e.simple_name = simple_name;
        e.file_path = f_.path;
        e.parent = parent;
        e.start_line = start_line;
        if (parent < 0) {
            e.fqn = f_.package.empty() ? simple_name : f_.package + "." + simple_name;
        } else {
            const ClassEntity& p = ent(parent);
            if (nesting == Nesting::Nested)
                e.fqn = p.fqn + "." + simple_name;
            else
                e.fqn = p.fqn + "$" + simple_name;
        }
        if (nesting == Nesting::Local) {
            const int dup = ++local_dups_[e.fqn];
            if (dup > 1) e.fqn += "$" + std::to_string(dup);
        }
        f_.entities.push_back(std::move(e));
        return static_cast<int>(f_.entities.size()) - 1;
    }

    void finish_entity(int idx, int decl_start, int end_tok) {
        ClassEntity& e = ent(idx);
        e.full_range = {decl_start, end_tok};
        e.end_line = end_tok > decl_start ? line(end_tok - 1) : line(decl_start);
        int comment = 0, logical = 0;
        for (int l = e.start_line; l <= e.end_line && l < static_cast<int>(f_.lines.size()); ++l) {
            if (f_.lines[static_cast<std::size_t>(l)].comment) ++comment;
            if (f_.lines[static_cast<std::size_t>(l)].code) ++logical;
        }
        e.comment_lines = comment;
        e.logical_lines = logical;
    }

    int parse_type_body(int i, int idx) {
        const int close = skip_balanced_tokens(t_, i);
        ent(idx).body_range = {i + 1, close - 1};
        int j = i + 1;
        if (ent(idx).kind == TypeKind::Enum) j = parse_enum_constants(j, close - 1, idx);
        while (j < close - 1) {
            if (is_punct(j, ";")) {
                ++j;
                continue;
            }
            const int next = parse_member_or_type(j, idx, Nesting::Nested);
            if (next <= j) {
                diag(j, "skipping unparseable member token: " + std::string(text(j)));
                ++j;
            } else {
                j = next;
            }
        }
        return close;
    }

    int parse_enum_constants(int i, int end, int idx) {
        while (i < end) {
            while (is_punct(i, "@")) i = skip_annotation_tokens(t_, i);
            if (is_punct(i, ";")) return i + 1;
            if (!is_word(i)) return i;
            const int name_idx = i;
            ++i;
            int args_begin = -1, args_end = -1;
            if (is_punct(i, "(")) {
                const int close = skip_balanced_tokens(t_, i);
                args_begin = i + 1;
                args_end = close - 1;
                i = close;
            }
            if (is_punct(i, "{")) {
                // An enum constant with a body behaves like an anonymous subclass.
                const int anon = new_anonymous(idx, line(name_idx));
                ent(anon).supertype_names.push_back(ent(idx).simple_name);
                const int close = parse_type_body(i, anon);
                finish_entity(anon, i, close);
                ent(anon).start_line = line(name_idx);
                i = close;
            }
            if (args_begin >= 0) {
                ent(idx).enum_constant_args.push_back({args_begin, args_end});
                scan_code_range(args_begin, args_end, idx);
            }
            if (is_punct(i, ",")) {
                ++i;
                continue;
            }
            if (is_punct(i, ";")) return i + 1;
            if (i >= end) return i;
        }
        return i;
    }

    int new_anonymous(int parent, int start_line) {
        const int count = ++anon_counter_[parent];
        ClassEntity e;
        e.kind = TypeKind::Class;
        e.nesting = Nesting::Anonymous;
        e.simple_name = "$anon" + std::to_string(count);
        e.fqn = ent(parent).fqn + "$anon" + std::to_string(count);
        e.file_path = f_.path;
        e.parent = parent;
        e.start_line = start_line;
        f_.entities.push_back(std::move(e));
        return static_cast<int>(f_.entities.size()) - 1;
    }

    /// Walks statement/expression tokens looking for local type declarations
    /// and anonymous classes. Everything else stays in place for the metric
    /// scans that run over the same ranges later.
    void scan_code_range(int begin, int end, int parent) {
        int i = begin;
        while (i < end && i < n_) {
            if (is_word(i, "new") && !(i > 0 && is_punct(i - 1, "::"))) {
                const int new_idx = i;
                std::string tname;
                const int after = scan_type_ref(t_, i + 1, &tname);
                if (after == i + 1) {
                    ++i;
                    continue;
                }
                if (is_punct(after, "(")) {
                    const int close_paren = skip_balanced_tokens(t_, after);
                    if (is_punct(close_paren, "{")) {
                        const int anon = new_anonymous(parent, line(new_idx));
                        ent(anon).supertype_names.push_back(tname);
                        const int body_close = parse_type_body(close_paren, anon);
                        finish_entity(anon, close_paren, body_close);
                        ent(anon).start_line = line(new_idx);
                        scan_code_range(after + 1, close_paren - 1, parent);  // ctor args
                        i = body_close;
                        continue;
                    }
                    i = after + 1;  // walk into the argument list
                    continue;
                }
                i = after;
                continue;
            }
            if (is_word(i) && is_type_keyword(text(i)) && !(i > 0 && is_punct(i - 1, "."))) {
                const int next = parse_type_decl(i, i, parent, Nesting::Local);
                if (next > i) {
                    i = next;
                    continue;
                }
                ++i;
                continue;
            }
            if (is_word(i, "record") && is_word(i + 1) && is_punct(i + 2, "(") &&
                !(i > 0 && is_punct(i - 1, "."))) {
                // Require a body to avoid misreading a call to a method named
                // "record" as a local record declaration.
                const int after_parens = skip_balanced_tokens(t_, i + 2);
                if (is_punct(after_parens, "{") || word_at(t_, after_parens, "implements")) {
                    const int next = parse_type_decl(i, i, parent, Nesting::Local);
                    if (next > i) {
                        i = next;
                        continue;
                    }
                }
            }
            ++i;
        }
    }
};

}  // namespace

ParsedFile parse_compilation_unit(std::string source, const std::string& path) {
    ParsedFile file;
    file.path = path;
    file.source = std::move(source);
    LexResult lexed = lex(file.source);
    file.tokens = std::move(lexed.tokens);
    file.lines = std::move(lexed.lines);
    file.line_count = lexed.line_count;
    Parser parser(file);
    parser.run();
    return file;
}

}  // namespace defectlab::javamodel
