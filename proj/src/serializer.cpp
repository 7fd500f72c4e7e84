#include "char_classes.hpp"
#include "rdfstar/turtle.hpp"
#include "rdfstar/vocab.hpp"

namespace rdfstar {

namespace {

void append_hex_escape(char32_t cp, std::string& out) {
    const char* digits = "0123456789ABCDEF";
    if (cp <= 0xFFFF) {
        out += "\\u";
        for (int shift = 12; shift >= 0; shift -= 4) out.push_back(digits[(cp >> shift) & 0xF]);
    } else {
        out += "\\U";
        for (int shift = 28; shift >= 0; shift -= 4) out.push_back(digits[(cp >> shift) & 0xF]);
    }
}

std::string escape_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20)
                    append_hex_escape(static_cast<char32_t>(static_cast<unsigned char>(c)), out);
                else
                    out.push_back(c);
        }
    }
    return out;
}

std::string iriref(const std::string& value) {
    std::string out = "<";
    for (char c : value) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x21 || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`' ||
            c == '\\')
            append_hex_escape(static_cast<char32_t>(u), out);
        else
            out.push_back(c);
    }
    out.push_back('>');
    return out;
}

bool matches_integer(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!chars::is_digit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool matches_decimal(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    std::size_t dot = s.find('.', i);
    if (dot == std::string::npos || dot + 1 >= s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k) {
        if (k == dot) continue;
        if (!chars::is_digit(static_cast<unsigned char>(s[k]))) return false;
    }
    return true;
}

bool matches_double(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    std::size_t e = s.find_first_of("eE", i);
    if (e == std::string::npos) return false;
    std::string mantissa = s.substr(i, e - i);
    std::string exponent = s.substr(e + 1);
    if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-'))
        exponent.erase(0, 1);
    if (exponent.empty()) return false;
    for (char c : exponent)
        if (!chars::is_digit(static_cast<unsigned char>(c))) return false;
    if (mantissa.empty()) return false;
    std::size_t dot = mantissa.find('.');
    std::string digits = mantissa;
    if (dot != std::string::npos) digits.erase(dot, 1);
    if (digits.empty()) return false;
    for (char c : digits)
        if (!chars::is_digit(static_cast<unsigned char>(c))) return false;
    return true;
}

/// Longest declared prefix whose expansion is a prefix of the IRI with a
/// cleanly writable remainder.
const std::pair<const std::string, Iri>* best_prefix(const std::string& iri,
                                                     const std::map<std::string, Iri>& prefixes) {
    const std::pair<const std::string, Iri>* best = nullptr;
    for (const auto& entry : prefixes) {
        const std::string& ns = entry.second.value();
        if (ns.empty() || iri.size() < ns.size() || iri.compare(0, ns.size(), ns) != 0) continue;
        std::string local = iri.substr(ns.size());
        if (!local.empty() && !chars::is_plain_pn_local(local)) continue;
        if (!best || ns.size() > best->second.value().size()) best = &entry;
    }
    return best;
}

struct Writer {
    const std::map<std::string, Iri>& prefixes;
    std::set<std::string>* used = nullptr;

    std::string iri(const Iri& value) const {
        if (const auto* p = best_prefix(value.value(), prefixes)) {
            if (used) used->insert(p->first);
            return p->first + ":" + value.value().substr(p->second.value().size());
        }
        return iriref(value.value());
    }

    std::string literal(const Literal& l) const {
        if (l.language()) return "\"" + escape_string(l.lexical()) + "\"@" + *l.language();
        const Iri& dt = l.datatype();
        if (dt == vocab::xsd_string()) return "\"" + escape_string(l.lexical()) + "\"";
        if (dt == vocab::xsd_integer() && matches_integer(l.lexical())) return l.lexical();
        if (dt == vocab::xsd_decimal() && matches_decimal(l.lexical())) return l.lexical();
        if (dt == vocab::xsd_double() && matches_double(l.lexical())) return l.lexical();
        if (dt == vocab::xsd_boolean() && (l.lexical() == "true" || l.lexical() == "false"))
            return l.lexical();
        return "\"" + escape_string(l.lexical()) + "\"^^" + iri(dt);
    }

    std::string term(const StarTerm& t) const {
        if (t.is_iri()) return iri(t.iri());
        if (t.is_bnode()) return "_:" + t.bnode().label();
        if (t.is_literal()) return literal(t.literal());
        return triple(t.triple());
    }

    std::string predicate(const Iri& p) const {
        if (p == vocab::rdf_type()) return "a";
        return iri(p);
    }

    std::string triple(const StarTriple& t) const {
        // the embedded-triple production takes a plain IRI predicate, so no
        // 'a' shorthand here
        return "<<" + term(t.subject()) + " " + iri(t.predicate()) + " " +
               term(t.object()) + ">>";
    }

    std::string statement(const StarTriple& t) const {
        return term(t.subject()) + " " + predicate(t.predicate()) + " " + term(t.object()) + " .";
    }
};

} // namespace

std::string term_to_turtle(const StarTerm& term, const std::map<std::string, Iri>& prefixes) {
    return Writer{prefixes}.term(term);
}

std::string triple_to_turtle(const StarTriple& t, const std::map<std::string, Iri>& prefixes) {
    return Writer{prefixes}.triple(t);
}

std::string serialize_turtlestar(const StarGraph& g, const std::map<std::string, Iri>& prefixes) {
    if (!g.frozen()) throw std::logic_error("serialization requires a frozen graph");
    std::set<std::string> used;
    Writer writer{prefixes, &used};
    std::string body;
    for (const StarTriple& t : g.triples()) {
        body += writer.statement(t);
        body += "\n";
    }
    std::string out;
    for (const std::string& name : used) {
        out += "@prefix " + name + ": " + iriref(prefixes.at(name).value()) + " .\n";
    }
    if (!out.empty() && !body.empty()) out += "\n";
    out += body;
    return out;
}

std::string serialize_ntriples(const PlainGraph& g) {
    std::string out;
    for (const StarTriple& t : g.triples()) {
        const StarTerm& s = t.subject();
        out += s.is_iri() ? iriref(s.iri().value()) : "_:" + s.bnode().label();
        out += " " + iriref(t.predicate().value()) + " ";
        const StarTerm& o = t.object();
        if (o.is_iri()) {
            out += iriref(o.iri().value());
        } else if (o.is_bnode()) {
            out += "_:" + o.bnode().label();
        } else {
            const Literal& l = o.literal();
            out += "\"" + escape_string(l.lexical()) + "\"";
            if (l.language())
                out += "@" + *l.language();
            else if (!(l.datatype() == vocab::xsd_string()))
                out += "^^" + iriref(l.datatype().value());
        }
        out += " .\n";
    }
    return out;
}

} // namespace rdfstar
