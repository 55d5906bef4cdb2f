#include "defectlab/javamodel/lexer.hpp"

namespace defectlab::javamodel {

namespace {

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Two-character operators we must see as single tokens. '&&' and '||' are
// decision points; '<=' '>=' must not be mistaken for generic brackets;
// '->' and '::' change how neighbouring identifiers are read.
constexpr const char* kTwoCharOps[] = {"&&", "||", "->", "::", "++", "--", "==",
                                       "!=", "<=", ">=", "+=", "-=", "*=", "/=",
                                       "%=", "^=", "&=", "|="};

}  // namespace

LexResult lex(std::string_view src) {
    LexResult out;
    const std::size_t n = src.size();

    int line_count = 1;
    for (char c : src)
        if (c == '\n') ++line_count;
    if (!src.empty() && src.back() == '\n') --line_count;
    if (src.empty()) line_count = 0;
    out.line_count = line_count;
    out.lines.assign(static_cast<std::size_t>(line_count) + 1, LineInfo{});

    int line = 1;
    auto mark_code = [&](int l) {
        if (l >= 1 && l <= line_count) out.lines[static_cast<std::size_t>(l)].code = true;
    };
    auto mark_comment = [&](int l) {
        if (l >= 1 && l <= line_count) out.lines[static_cast<std::size_t>(l)].comment = true;
    };

    std::size_t i = 0;
    // Skip a UTF-8 BOM if present.
    if (n >= 3 && src[0] == '\xEF' && src[1] == '\xBB' && src[2] == '\xBF') i = 3;

    while (i < n) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == 0x0B) {
            ++i;
            continue;
        }
        // Line comment.
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            mark_comment(line);
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        // Block comment (Javadoc included); marks every line it touches.
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            mark_comment(line);
            i += 2;
            while (i < n) {
                if (src[i] == '\n') {
                    ++line;
                    mark_comment(line);
                    ++i;
                } else if (src[i] == '*' && i + 1 < n && src[i + 1] == '/') {
                    i += 2;
                    break;
                } else {
                    ++i;
                }
            }
            continue;
        }
        // Text block """ ... """ (closes on an unescaped triple quote).
        if (c == '"' && i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
            mark_code(line);
            const std::size_t start = i;
            const int start_line = line;
            i += 3;
            while (i < n) {
                if (src[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (src[i] == '\n') {
                    ++line;
                    mark_code(line);
                    ++i;
                    continue;
                }
                if (src[i] == '"' && i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
                    i += 3;
                    break;
                }
                ++i;
            }
            out.tokens.push_back({TokenKind::String, src.substr(start, i - start), start_line});
            continue;
        }
        if (c == '"' || c == '\'') {
            mark_code(line);
            const std::size_t start = i;
            const char quote = static_cast<char>(c);
            ++i;
            while (i < n && src[i] != quote && src[i] != '\n') {
                if (src[i] == '\\' && i + 1 < n)
                    i += 2;
                else
                    ++i;
            }
            if (i < n && src[i] == quote) ++i;  // unterminated literal: stop at EOL
            out.tokens.push_back({quote == '"' ? TokenKind::String : TokenKind::Char,
                                  src.substr(start, i - start), line});
            continue;
        }
        mark_code(line);
        if (is_ident_start(c)) {
            const std::size_t start = i;
            while (i < n && is_ident_part(static_cast<unsigned char>(src[i]))) ++i;
            out.tokens.push_back({TokenKind::Word, src.substr(start, i - start), line});
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(static_cast<unsigned char>(src[i + 1])))) {
            const std::size_t start = i;
            while (i < n) {
                unsigned char d = static_cast<unsigned char>(src[i]);
                if (is_ident_part(d)) {
                    ++i;
                } else if (d == '.' && i + 1 < n && is_digit(static_cast<unsigned char>(src[i + 1]))) {
                    ++i;
                } else if ((d == '+' || d == '-') && i > start) {
                    const char prev = src[i - 1];
                    if (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P')
                        ++i;
                    else
                        break;
                } else {
                    break;
                }
            }
            out.tokens.push_back({TokenKind::Number, src.substr(start, i - start), line});
            continue;
        }
        // Operators / punctuation.
        if (i + 1 < n) {
            const std::string_view two = src.substr(i, 2);
            for (const char* op : kTwoCharOps) {
                if (two == op) {
                    out.tokens.push_back({TokenKind::Punct, two, line});
                    i += 2;
                    goto next;
                }
            }
        }
        out.tokens.push_back({TokenKind::Punct, src.substr(i, 1), line});
        ++i;
    next:;
    }
    return out;
}

}  // namespace defectlab::javamodel
