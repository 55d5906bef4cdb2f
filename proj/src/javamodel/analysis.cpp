#include "defectlab/javamodel/analysis.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "defectlab/javamodel/parser.hpp"

namespace defectlab::javamodel {

namespace {

bool word_at(const std::vector<Token>& t, int i) {
    return i >= 0 && i < static_cast<int>(t.size()) && t[i].kind == TokenKind::Word;
}
bool word_at(const std::vector<Token>& t, int i, std::string_view w) {
    return word_at(t, i) && t[i].text == w;
}
bool punct_at(const std::vector<Token>& t, int i, std::string_view p) {
    return i >= 0 && i < static_cast<int>(t.size()) && t[i].kind == TokenKind::Punct &&
           t[i].text == p;
}

int count_call_args(const std::vector<Token>& t, int open) {
    const int close = skip_balanced_tokens(t, open) - 1;
    if (close <= open + 1) return 0;
    int depth = 0, commas = 0;
    for (int i = open + 1; i < close; ++i) {
        if (t[i].kind != TokenKind::Punct) continue;
        const std::string_view s = t[i].text;
        if (s == "(" || s == "[" || s == "{") ++depth;
        else if (s == ")" || s == "]" || s == "}") --depth;
        else if (s == "," && depth == 0) ++commas;
    }
    return commas + 1;
}

bool decl_terminator(const std::vector<Token>& t, int i) {
    return punct_at(t, i, "=") || punct_at(t, i, ";") || punct_at(t, i, ",") ||
           punct_at(t, i, ":") || punct_at(t, i, ")") || punct_at(t, i, "&&");
}

}  // namespace

std::vector<RefEvent> scan_references(const ParsedFile& file, TokenRange range,
                                      const ScanContext& ctx) {
    const std::vector<Token>& t = file.tokens;
    std::vector<RefEvent> events;
    std::unordered_map<std::string, std::string> locals;  // name -> declared type
    if (ctx.params)
        for (const Param& p : *ctx.params) locals[p.name] = p.type_name;
    std::unordered_map<std::string, std::string> fields;
    if (ctx.fields)
        for (const FieldDecl& fd : *ctx.fields) fields.emplace(fd.name, fd.type_name);

    auto emit_generic_names = [&](int b, int e) {
        int i = b;
        while (i < e) {
            if (!word_at(t, i) || is_java_keyword(t[i].text) || punct_at(t, i - 1, ".")) {
                ++i;
                continue;
            }
            RefEvent ev;
            ev.kind = RefEvent::Kind::Chain;
            ev.segments.emplace_back(t[i].text);
            ++i;
            while (punct_at(t, i, ".") && word_at(t, i + 1)) {
                ev.segments.emplace_back(t[i + 1].text);
                i += 2;
            }
            ev.type_position = true;
            events.push_back(std::move(ev));
        }
    };

    int i = range.begin;
    const int end = std::min<int>(range.end, static_cast<int>(t.size()));
    while (i < end) {
        if (!word_at(t, i)) {
            ++i;
            continue;
        }
        const std::string_view w = t[i].text;

        if (w == "new") {
            if (punct_at(t, i - 1, "::")) {  // constructor reference, not a call site
                ++i;
                continue;
            }
            std::string tname;
            std::vector<std::string> targs;
            const int after = scan_type_ref(t, i + 1, &tname, &targs);
            if (after == i + 1) {
                ++i;
                continue;
            }
            for (const std::string& a : targs) {
                RefEvent ga;
                ga.kind = RefEvent::Kind::Chain;
                ga.segments = {a};
                ga.type_position = true;
                events.push_back(std::move(ga));
            }
            if (punct_at(t, after, "(")) {
                RefEvent ev;
                ev.kind = RefEvent::Kind::NewObject;
                ev.receiver_type = tname;
                ev.argc = count_call_args(t, after);
                const int close = skip_balanced_tokens(t, after);
                if (punct_at(t, close, ".") && word_at(t, close + 1) && punct_at(t, close + 2, "(")) {
                    ev.followup_method = std::string(t[close + 1].text);
                    ev.followup_argc = count_call_args(t, close + 2);
                }
                events.push_back(std::move(ev));
                i = after + 1;  // keep scanning inside the argument list
            } else {
                // array creation: type use only
                RefEvent ev;
                ev.kind = RefEvent::Kind::Chain;
                ev.segments = {tname};
                ev.type_position = true;
                events.push_back(std::move(ev));
                i = after;
            }
            continue;
        }

        if (w == "this") {
            if (punct_at(t, i + 1, "(")) {
                RefEvent ev;
                ev.kind = RefEvent::Kind::OwnCall;
                ev.name = "this";
                ev.argc = count_call_args(t, i + 1);
                events.push_back(std::move(ev));
                ++i;
                continue;
            }
            if (punct_at(t, i + 1, ".") && word_at(t, i + 2)) {
                const std::string name(t[i + 2].text);
                if (punct_at(t, i + 3, "(")) {
                    RefEvent ev;
                    ev.kind = RefEvent::Kind::OwnCall;
                    ev.name = name;
                    ev.argc = count_call_args(t, i + 3);
                    events.push_back(std::move(ev));
                } else if (fields.count(name)) {
                    RefEvent ev;
                    ev.kind = RefEvent::Kind::FieldRef;
                    ev.name = name;
                    events.push_back(std::move(ev));
                }
                i += 3;
                continue;
            }
            ++i;
            continue;
        }

        if (w == "super") {
            if (punct_at(t, i + 1, "(")) {
                RefEvent ev;
                ev.kind = RefEvent::Kind::SuperCall;
                ev.name = "super";
                ev.argc = count_call_args(t, i + 1);
                events.push_back(std::move(ev));
            } else if (punct_at(t, i + 1, ".") && word_at(t, i + 2) && punct_at(t, i + 3, "(")) {
                RefEvent ev;
                ev.kind = RefEvent::Kind::SuperCall;
                ev.name = std::string(t[i + 2].text);
                ev.argc = count_call_args(t, i + 3);
                events.push_back(std::move(ev));
                i += 3;
                continue;
            }
            ++i;
            continue;
        }

        if (is_java_keyword(w)) {
            // Primitive local declarations still shadow fields: int x = ...
            if (is_primitive_type_name(w)) {
                int j = i + 1;
                while (punct_at(t, j, "[") && punct_at(t, j + 1, "]")) j += 2;
                if (word_at(t, j) && decl_terminator(t, j + 1)) {
                    locals[std::string(t[j].text)] = std::string(w);
                    i = j + 1;
                    continue;
                }
            }
            ++i;
            continue;
        }

        // Candidate chain head. Skip declared names and chain continuations.
        const bool prev_dot = punct_at(t, i - 1, ".") || punct_at(t, i - 1, "::");
        const bool prev_typeish_word =
            word_at(t, i - 1) && (!is_java_keyword(t[i - 1].text) ||
                                  is_primitive_type_name(t[i - 1].text) ||
                                  t[i - 1].text == "void");
        if (prev_dot || prev_typeish_word) {
            ++i;
            continue;
        }
        const bool is_annotation = punct_at(t, i - 1, "@");
        const bool after_instanceof = word_at(t, i - 1, "instanceof");

        std::vector<std::string> segments;
        segments.emplace_back(w);
        int j = i + 1;
        while (true) {
            int gend;
            if (punct_at(t, j, "<") && try_skip_generics(t, j, &gend)) {
                emit_generic_names(j + 1, gend - 1);
                j = gend;
                continue;
            }
            if (punct_at(t, j, ".") && word_at(t, j + 1)) {
                segments.emplace_back(t[j + 1].text);
                j += 2;
                continue;
            }
            break;
        }
        const bool call = punct_at(t, j, "(") && !is_annotation;

        if (call) {
            const int argc = count_call_args(t, j);
            if (segments.size() == 1) {
                RefEvent ev;
                ev.kind = RefEvent::Kind::OwnCall;
                ev.name = segments[0];
                ev.argc = argc;
                events.push_back(std::move(ev));
            } else {
                RefEvent ev;
                ev.kind = RefEvent::Kind::Chain;
                ev.segments = std::move(segments);
                ev.call = true;
                ev.argc = argc;
                const std::string& head = ev.segments.front();
                if (ev.segments.size() == 2) {
                    auto lit = locals.find(head);
                    if (lit != locals.end()) {
                        ev.var_type = lit->second;
                    } else {
                        auto fit = fields.find(head);
                        if (fit != fields.end()) {
                            ev.var_type = fit->second;
                            RefEvent fr;
                            fr.kind = RefEvent::Kind::FieldRef;
                            fr.name = head;
                            events.push_back(std::move(fr));
                        }
                    }
                }
                events.push_back(std::move(ev));
            }
            i = j;
            continue;
        }

        // Local variable declaration: Type name = / ; / , / : / )
        int jj = j;
        while (punct_at(t, jj, "[") && punct_at(t, jj + 1, "]")) jj += 2;
        if (word_at(t, jj) && !is_java_keyword(t[jj].text) && decl_terminator(t, jj + 1)) {
            locals[std::string(t[jj].text)] = segments.front();
            RefEvent ev;
            ev.kind = RefEvent::Kind::Chain;
            ev.segments = std::move(segments);
            ev.type_position = true;
            events.push_back(std::move(ev));
            i = jj + 1;
            continue;
        }

        if (segments.size() == 1) {
            const std::string& name = segments[0];
            if (locals.count(name)) {
                i = j;
                continue;
            }
            if (fields.count(name)) {
                RefEvent ev;
                ev.kind = RefEvent::Kind::FieldRef;
                ev.name = name;
                events.push_back(std::move(ev));
                i = j;
                continue;
            }
        }
        RefEvent ev;
        ev.kind = RefEvent::Kind::Chain;
        ev.segments = std::move(segments);
        ev.type_position = after_instanceof;
        events.push_back(std::move(ev));
        i = j;
    }
    return events;
}

std::vector<std::pair<int, int>> entity_skip_ranges(const ParsedFile& file) {
    std::vector<std::pair<int, int>> out;
    for (const ClassEntity& e : file.entities) {
        if (e.full_range.empty()) continue;
        out.emplace_back(e.full_range.begin, e.full_range.end);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

class StructureScanner {
public:
    StructureScanner(const std::vector<Token>& t, const std::vector<std::pair<int, int>>& skips,
                     int limit)
        : t_(t), limit_(limit) {
        for (const auto& [b, e] : skips) {
            auto [it, inserted] = skip_.emplace(b, e);
            if (!inserted && e > it->second) it->second = e;
        }
    }

    StructureStats stats;

    void scan_range(int begin, int end, int nest) {
        int i = begin;
        int guard = 0;
        while (i < end && i < limit_) {
            const int next = scan_stmt(i, nest);
            if (next <= i) {
                i = i + 1;
                if (++guard > (1 << 22)) break;
            } else {
                i = next;
            }
        }
    }

private:
    const std::vector<Token>& t_;
    const int limit_;
    std::unordered_map<int, int> skip_;

    int skip_holes(int i) const {
        auto it = skip_.find(i);
        while (it != skip_.end()) {
            i = it->second;
            it = skip_.find(i);
        }
        return i;
    }

    bool word(int i, std::string_view w) const { return word_at(t_, i, w); }
    bool punct(int i, std::string_view p) const { return punct_at(t_, i, p); }

    void record(int nest) { stats.max_nesting = std::max(stats.max_nesting, nest); }

    int scan_stmt(int i, int nest) {
        i = skip_holes(i);
        if (i >= limit_) return i;
        if (punct(i, ";")) return i + 1;
        if (punct(i, "}") || punct(i, ")")) return i;  // caller's closer
        if (punct(i, "{")) return scan_block(i, nest);
        if (word_at(t_, i)) {
            const std::string_view w = t_[i].text;
            if (w == "if") return scan_if(i, nest + 1);
            if (w == "for" || w == "while") {
                ++stats.decisions;
                record(nest + 1);
                int j = i + 1;
                if (punct(j, "(")) j = scan_paren(j, nest + 1);
                return scan_stmt(j, nest + 1);
            }
            if (w == "do") {
                ++stats.decisions;
                record(nest + 1);
                int j = scan_stmt(i + 1, nest + 1);
                j = skip_holes(j);
                if (word(j, "while")) {
                    ++j;
                    if (punct(j, "(")) j = scan_paren(j, nest + 1);
                    if (punct(j, ";")) ++j;
                }
                return j;
            }
            if (w == "switch") {
                record(nest + 1);
                int j = i + 1;
                if (punct(j, "(")) j = scan_paren(j, nest + 1);
                if (punct(j, "{")) j = scan_block(j, nest + 1);
                return j;
            }
            if (w == "try") {
                record(nest + 1);
                int j = i + 1;
                if (punct(j, "(")) j = scan_paren(j, nest + 1);  // resources
                if (punct(j, "{")) j = scan_block(j, nest + 1);
                while (true) {
                    j = skip_holes(j);
                    if (word(j, "catch")) {
                        ++stats.decisions;
                        ++j;
                        if (punct(j, "(")) j = skip_balanced_tokens(t_, j);
                        if (punct(j, "{")) j = scan_block(j, nest + 1);
                        continue;
                    }
                    if (word(j, "finally")) {
                        ++j;
                        if (punct(j, "{")) j = scan_block(j, nest + 1);
                        continue;
                    }
                    break;
                }
                return j;
            }
            if (w == "synchronized") {
                int j = i + 1;
                if (punct(j, "(")) j = scan_paren(j, nest);
                if (punct(j, "{")) j = scan_block(j, nest);
                return j;
            }
            if (w == "case" || w == "default") {
                if (w == "case") ++stats.decisions;
                int j = i + 1;
                int depth = 0;
                while (j < limit_) {
                    if (punct(j, "(") || punct(j, "[")) ++depth;
                    if (punct(j, ")") || punct(j, "]")) --depth;
                    if (depth == 0 && (punct(j, ":") || punct(j, "->"))) break;
                    ++j;
                }
                if (punct(j, "->")) return scan_stmt(j + 1, nest);
                return j + 1;
            }
            if (w == "else") return scan_stmt(i + 1, nest);  // orphaned else: scan its body
            if (w == "break" || w == "continue") {
                int j = i + 1;
                while (j < limit_ && !punct(j, ";")) ++j;
                return j + 1;
            }
            if (w == "return" || w == "throw" || w == "yield" || w == "assert")
                return scan_expr_stmt(i + 1, nest);
        }
        return scan_expr_stmt(i, nest);
    }

    int scan_if(int i, int d) {
        ++stats.decisions;
        record(d);
        int j = i + 1;
        if (punct(j, "(")) j = scan_paren(j, d);
        j = scan_stmt(j, d);
        j = skip_holes(j);
        if (word(j, "else")) {
            int k = skip_holes(j + 1);
            if (word(k, "if")) return scan_if(k, d);  // else-if stays at this depth
            return scan_stmt(j + 1, d);
        }
        return j;
    }

    int scan_block(int i, int nest) {
        int j = i + 1;
        int guard = 0;
        while (j < limit_) {
            j = skip_holes(j);
            if (j >= limit_) break;
            if (punct(j, "}")) return j + 1;
            const int next = scan_stmt(j, nest);
            if (next <= j) {
                ++j;
                if (++guard > (1 << 22)) break;
            } else {
                j = next;
            }
        }
        return j;
    }

    /// Fixed-range expression walk over the inside of a paren group.
    int scan_paren(int i, int nest) {
        const int close = skip_balanced_tokens(t_, i);
        scan_expr_tokens(i + 1, close - 1, nest);
        return close;
    }

    void scan_expr_tokens(int b, int e, int nest) {
        int i = b;
        while (i < e && i < limit_) {
            i = skip_holes(i);
            if (i >= e) break;
            int gend;
            if (punct(i, "<") && try_skip_generics(t_, i, &gend) && gend <= e) {
                i = gend;
                continue;
            }
            if (punct(i, "?") || punct(i, "&&") || punct(i, "||")) {
                ++stats.decisions;
                ++i;
                continue;
            }
            if (punct(i, "->") && punct(i + 1, "{")) {
                i = scan_block(i + 1, nest);
                continue;
            }
            if (word(i, "switch")) {  // switch expression
                record(nest + 1);
                int j = i + 1;
                if (punct(j, "(")) j = scan_paren(j, nest + 1);
                if (punct(j, "{")) j = scan_block(j, nest + 1);
                i = j;
                continue;
            }
            ++i;
        }
    }

    /// Expression statement: consumes up to ';' at relative depth 0. Stops
    /// without consuming a closer that belongs to the caller.
    int scan_expr_stmt(int i, int nest) {
        int depth = 0;
        while (i < limit_) {
            i = skip_holes(i);
            if (i >= limit_) break;
            int gend;
            if (punct(i, "<") && try_skip_generics(t_, i, &gend)) {
                i = gend;
                continue;
            }
            if (punct(i, "?") || punct(i, "&&") || punct(i, "||")) {
                ++stats.decisions;
                ++i;
                continue;
            }
            if (punct(i, "->") && punct(i + 1, "{")) {
                i = scan_block(i + 1, nest);
                continue;
            }
            if (word(i, "switch")) {
                record(nest + 1);
                int j = i + 1;
                if (punct(j, "(")) j = scan_paren(j, nest + 1);
                if (punct(j, "{")) j = scan_block(j, nest + 1);
                i = j;
                continue;
            }
            if (punct(i, "(") || punct(i, "[") || punct(i, "{")) {
                ++depth;
                ++i;
                continue;
            }
            if (punct(i, ")") || punct(i, "]") || punct(i, "}")) {
                if (depth == 0) return i;  // caller's closer
                --depth;
                ++i;
                continue;
            }
            if (punct(i, ";") && depth == 0) return i + 1;
            ++i;
        }
        return i;
    }
};

}  // namespace

StructureStats analyze_structure(const ParsedFile& file, TokenRange range,
                                 const std::vector<std::pair<int, int>>& skip_ranges) {
    StructureScanner scanner(file.tokens, skip_ranges, range.end);
    scanner.scan_range(range.begin, range.end, 0);
    return scanner.stats;
}

}  // namespace defectlab::javamodel
