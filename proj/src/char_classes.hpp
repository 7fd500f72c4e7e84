#ifndef RDFSTAR_SRC_CHAR_CLASSES_HPP
#define RDFSTAR_SRC_CHAR_CLASSES_HPP

#include <cstdint>
#include <string>
#include <string_view>

// Shared between the term validators and the Turtle / query lexers:
// UTF-8 decoding plus the PN_* character classes of the Turtle grammar.

namespace rdfstar::chars {

inline constexpr char32_t kInvalid = 0xFFFFFFFF;

/// Decodes one code point at byte offset i; advances i past it. Returns
/// kInvalid on malformed input (i is advanced by one byte).
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) -> std::uint8_t {
        return static_cast<std::uint8_t>(s[k]);
    };
    std::uint8_t b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return kInvalid;
    }
    if (i + len > s.size()) {
        ++i;
        return kInvalid;
    }
    for (int k = 1; k < len; ++k) {
        std::uint8_t b = byte(i + k);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return kInvalid;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

inline void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline bool is_pn_chars_base(char32_t c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= 0x00C0 && c <= 0x00D6) ||
           (c >= 0x00D8 && c <= 0x00F6) || (c >= 0x00F8 && c <= 0x02FF) ||
           (c >= 0x0370 && c <= 0x037D) || (c >= 0x037F && c <= 0x1FFF) ||
           (c >= 0x200C && c <= 0x200D) || (c >= 0x2070 && c <= 0x218F) ||
           (c >= 0x2C00 && c <= 0x2FEF) || (c >= 0x3001 && c <= 0xD7FF) ||
           (c >= 0xF900 && c <= 0xFDCF) || (c >= 0xFDF0 && c <= 0xFFFD) ||
           (c >= 0x10000 && c <= 0xEFFFF);
}

inline bool is_pn_chars_u(char32_t c) { return is_pn_chars_base(c) || c == '_'; }

inline bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_pn_chars(char32_t c) {
    return is_pn_chars_u(c) || c == '-' || is_digit(c) || c == 0x00B7 ||
           (c >= 0x0300 && c <= 0x036F) || (c >= 0x203F && c <= 0x2040);
}

inline bool is_ws(char32_t c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

inline bool is_hex(char32_t c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

/// BLANK_NODE_LABEL body (after "_:"):
/// (PN_CHARS_U | [0-9]) ((PN_CHARS | '.')* PN_CHARS)?
inline bool is_valid_blank_label(std::string_view label) {
    if (label.empty()) return false;
    std::size_t i = 0;
    char32_t first = decode_utf8(label, i);
    if (first == kInvalid || !(is_pn_chars_u(first) || is_digit(first))) return false;
    char32_t last = first;
    while (i < label.size()) {
        char32_t c = decode_utf8(label, i);
        if (c == kInvalid) return false;
        if (!(is_pn_chars(c) || c == '.')) return false;
        last = c;
    }
    return is_pn_chars(last);
}

/// SPARQL VARNAME: (PN_CHARS_U | [0-9]) (PN_CHARS_U | [0-9] | #xB7 |
/// [#x300-#x36F] | [#x203F-#x2040])*
inline bool is_valid_varname(std::string_view name) {
    if (name.empty()) return false;
    std::size_t i = 0;
    char32_t first = decode_utf8(name, i);
    if (first == kInvalid || !(is_pn_chars_u(first) || is_digit(first))) return false;
    while (i < name.size()) {
        char32_t c = decode_utf8(name, i);
        if (c == kInvalid) return false;
        if (!(is_pn_chars_u(c) || is_digit(c) || c == 0x00B7 || (c >= 0x0300 && c <= 0x036F) ||
              (c >= 0x203F && c <= 0x2040)))
            return false;
    }
    return true;
}

/// PNAME prefix part: PN_CHARS_BASE ((PN_CHARS | '.')* PN_CHARS)?
inline bool is_valid_pname_prefix(std::string_view prefix) {
    if (prefix.empty()) return true; // the default prefix ':'
    std::size_t i = 0;
    char32_t first = decode_utf8(prefix, i);
    if (first == kInvalid || !is_pn_chars_base(first)) return false;
    char32_t last = first;
    while (i < prefix.size()) {
        char32_t c = decode_utf8(prefix, i);
        if (c == kInvalid || !(is_pn_chars(c) || c == '.')) return false;
        last = c;
    }
    return is_pn_chars(last);
}

/// Plain PN_LOCAL without escapes or percent sequences; used to decide
/// whether an IRI tail can be written as a prefixed name.
inline bool is_plain_pn_local(std::string_view local) {
    if (local.empty()) return false;
    std::size_t i = 0;
    char32_t first = decode_utf8(local, i);
    if (first == kInvalid || !(is_pn_chars_u(first) || first == ':' || is_digit(first)))
        return false;
    char32_t last = first;
    while (i < local.size()) {
        char32_t c = decode_utf8(local, i);
        if (c == kInvalid || !(is_pn_chars(c) || c == '.' || c == ':')) return false;
        last = c;
    }
    return is_pn_chars(last) || last == ':';
}

} // namespace rdfstar::chars

#endif
