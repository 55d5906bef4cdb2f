#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace defectlab::javamodel {

enum class TokenKind {
    Word,    // identifiers and keywords
    Number,
    String,  // string literal or text block
    Char,
    Punct,   // operators and punctuation, possibly multi-char
};

struct Token {
    TokenKind kind;
    std::string_view text;  // view into the source buffer
    int line;               // 1-based
};

/// Per-line classification used for LOC / comment-density accounting.
/// A line can be both code and comment (trailing comment after a statement).
struct LineInfo {
    bool code = false;     // any non-comment, non-whitespace content
    bool comment = false;  // any part of the line lies inside a comment
};

struct LexResult {
    std::vector<Token> tokens;
    std::vector<LineInfo> lines;  // index 0 = line 1
    int line_count = 0;
};

/// Tokenizes Java source. Comments are not emitted as tokens; they only feed
/// the per-line table. Handles line/block comments, string and char literals
/// with escapes, and text blocks. Bytes >= 0x80 are treated as identifier
/// characters, which covers unicode identifiers without decoding UTF-8.
LexResult lex(std::string_view source);

}  // namespace defectlab::javamodel
