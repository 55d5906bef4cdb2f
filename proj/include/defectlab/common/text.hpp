#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace defectlab {

inline std::string format_double(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

/// Compact float formatting for report tables: fixed 6 decimals covers every
/// score/importance magnitude we emit while staying byte-stable.
inline std::string format_score(double v) { return format_double(v, 6); }

inline std::string csv_quote(std::string_view field) {
    bool needs = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') { needs = true; break; }
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Splits one CSV record (RFC 4180 quoting). Returns false on unbalanced quotes.
bool csv_split(std::string_view line, std::vector<std::string>& fields);

std::vector<std::string> split_lines(std::string_view text);

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace defectlab
