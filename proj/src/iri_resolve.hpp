#ifndef RDFSTAR_SRC_IRI_RESOLVE_HPP
#define RDFSTAR_SRC_IRI_RESOLVE_HPP

#include <string>
#include <string_view>

// RFC 3986 reference resolution, enough for Turtle @base handling.

namespace rdfstar {

inline bool iri_has_scheme(std::string_view iri) {
    if (iri.empty()) return false;
    char c = iri[0];
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        char d = iri[i];
        if (d == ':') return true;
        bool ok = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') ||
                  d == '+' || d == '-' || d == '.';
        if (!ok) return false;
    }
    return false;
}

namespace detail {

struct IriParts {
    std::string scheme;    // without ':'
    std::string authority; // without '//', may be empty while present
    bool has_authority = false;
    std::string path;
    std::string query; // without '?'
    bool has_query = false;
    std::string fragment; // without '#'
    bool has_fragment = false;
};

inline IriParts split_iri(std::string_view iri) {
    IriParts parts;
    std::size_t pos = 0;
    if (iri_has_scheme(iri)) {
        std::size_t colon = iri.find(':');
        parts.scheme = std::string(iri.substr(0, colon));
        pos = colon + 1;
    }
    if (iri.size() >= pos + 2 && iri[pos] == '/' && iri[pos + 1] == '/') {
        parts.has_authority = true;
        pos += 2;
        std::size_t end = iri.find_first_of("/?#", pos);
        if (end == std::string_view::npos) end = iri.size();
        parts.authority = std::string(iri.substr(pos, end - pos));
        pos = end;
    }
    std::size_t qmark = iri.find_first_of("?#", pos);
    if (qmark == std::string_view::npos) qmark = iri.size();
    parts.path = std::string(iri.substr(pos, qmark - pos));
    pos = qmark;
    if (pos < iri.size() && iri[pos] == '?') {
        parts.has_query = true;
        std::size_t hash = iri.find('#', pos);
        if (hash == std::string_view::npos) hash = iri.size();
        parts.query = std::string(iri.substr(pos + 1, hash - pos - 1));
        pos = hash;
    }
    if (pos < iri.size() && iri[pos] == '#') {
        parts.has_fragment = true;
        parts.fragment = std::string(iri.substr(pos + 1));
    }
    return parts;
}

inline std::string remove_dot_segments(std::string input) {
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2); // leave the leading '/'
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0 || input == "/..") {
            input.erase(0, 3);
            if (input.empty()) input = "/";
            std::size_t slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            std::size_t next = input.find('/', 1);
            if (next == std::string::npos) next = input.size();
            output.append(input, 0, next);
            input.erase(0, next);
        }
    }
    return output;
}

inline std::string merge_paths(const IriParts& base, const std::string& ref_path) {
    if (base.has_authority && base.path.empty()) return "/" + ref_path;
    std::size_t slash = base.path.find_last_of('/');
    if (slash == std::string::npos) return ref_path;
    return base.path.substr(0, slash + 1) + ref_path;
}

inline std::string recompose(const IriParts& p) {
    std::string out;
    if (!p.scheme.empty()) out += p.scheme + ":";
    if (p.has_authority) out += "//" + p.authority;
    out += p.path;
    if (p.has_query) out += "?" + p.query;
    if (p.has_fragment) out += "#" + p.fragment;
    return out;
}

} // namespace detail

inline std::string resolve_iri(std::string_view base, std::string_view reference) {
    using namespace detail;
    IriParts b = split_iri(base);
    IriParts r = split_iri(reference);
    IriParts t;
    if (!r.scheme.empty()) {
        t = r;
        t.path = remove_dot_segments(t.path);
    } else {
        t.scheme = b.scheme;
        if (r.has_authority) {
            t.has_authority = true;
            t.authority = r.authority;
            t.path = remove_dot_segments(r.path);
            t.has_query = r.has_query;
            t.query = r.query;
        } else {
            t.has_authority = b.has_authority;
            t.authority = b.authority;
            if (r.path.empty()) {
                t.path = b.path;
                t.has_query = r.has_query ? true : b.has_query;
                t.query = r.has_query ? r.query : b.query;
            } else {
                t.path = r.path[0] == '/' ? remove_dot_segments(r.path)
                                          : remove_dot_segments(merge_paths(b, r.path));
                t.has_query = r.has_query;
                t.query = r.query;
            }
        }
        t.has_fragment = r.has_fragment;
        t.fragment = r.fragment;
        return recompose(t);
    }
    t.has_fragment = r.has_fragment;
    t.fragment = r.fragment;
    return recompose(t);
}

} // namespace rdfstar

#endif
