#include <cstdlib>
#include <string>

#include "char_classes.hpp"
#include "iri_resolve.hpp"
#include "rdfstar/turtle.hpp"
#include "rdfstar/vocab.hpp"

namespace rdfstar {

namespace {

using namespace chars;

struct ParseAbort {
    SourcePosition position;
    std::string message;
};

class TurtleParser {
public:
    TurtleParser(std::string_view input, const ParseOptions& options)
        : input_(input), max_nesting_(options.max_nesting ? options.max_nesting
                                                          : max_nesting_depth()) {
        if (options.base) base_ = options.base->value();
        collect_used_blank_labels();
    }

    ParseResult run() {
        ParseResult result;
        try {
            while (true) {
                skip_ws();
                if (at_end()) break;
                parse_statement();
            }
            result.graph = std::move(graph_);
            result.graph.freeze();
        } catch (const ParseAbort& abort) {
            result.diagnostics.push_back({Severity::Error, abort.position, abort.message});
        } catch (const std::exception& e) {
            // term validation errors (bad language tags, IRI characters
            // decoded from escapes, depth overflow) surface as positioned
            // diagnostics
            result.diagnostics.push_back({Severity::Error, token_start_, e.what()});
        }
        for (const auto& [name, iri] : prefixes_) result.prefixes.emplace(name, Iri(iri));
        if (!base_.empty()) result.base = Iri(base_);
        return result;
    }

private:
    // --- input cursor ---

    bool at_end() const { return offset_ >= input_.size(); }

    char peek(std::size_t ahead = 0) const {
        return offset_ + ahead < input_.size() ? input_[offset_ + ahead] : '\0';
    }

    char advance() {
        char c = input_[offset_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++column_; // count code points, not continuation bytes
        }
        return c;
    }

    SourcePosition here() const { return {line_, column_, offset_}; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseAbort{here(), message}; }
    [[noreturn]] void fail_at(SourcePosition pos, const std::string& message) const {
        throw ParseAbort{pos, message};
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (is_ws(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c, const std::string& what) {
        if (at_end() || peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
        advance();
    }

    // --- statements ---

    void parse_statement() {
        token_start_ = here();
        if (peek() == '@') {
            parse_at_directive();
            return;
        }
        if (is_sparql_directive("PREFIX")) {
            consume_word();
            parse_prefix_body(false);
            return;
        }
        if (is_sparql_directive("BASE")) {
            consume_word();
            parse_base_body(false);
            return;
        }
        parse_triples();
        skip_ws();
        expect('.', "after triple statement");
    }

    bool is_sparql_directive(std::string_view keyword) const {
        if (offset_ + keyword.size() > input_.size()) return false;
        for (std::size_t i = 0; i < keyword.size(); ++i) {
            char c = input_[offset_ + i];
            char k = static_cast<char>(keyword[i]);
            if (c != k && c != static_cast<char>(k - 'A' + 'a')) return false;
        }
        // A ':' right after the word would make it a prefixed name instead.
        char next = offset_ + keyword.size() < input_.size() ? input_[offset_ + keyword.size()] : ' ';
        return next != ':';
    }

    void consume_word() {
        while (!at_end() && !is_ws(static_cast<unsigned char>(peek())) && peek() != '<') advance();
    }

    void parse_at_directive() {
        SourcePosition pos = here();
        advance(); // '@'
        std::string word;
        while (!at_end() && peek() >= 'a' && peek() <= 'z') word.push_back(advance());
        if (word == "prefix") {
            parse_prefix_body(true);
        } else if (word == "base") {
            parse_base_body(true);
        } else {
            fail_at(pos, "unknown directive '@" + word + "'");
        }
    }

    void parse_prefix_body(bool dotted) {
        skip_ws();
        std::string prefix = parse_pname_ns();
        skip_ws();
        std::string iri = parse_iriref();
        prefixes_[prefix] = iri;
        if (dotted) {
            skip_ws();
            expect('.', "after @prefix directive");
        }
    }

    void parse_base_body(bool dotted) {
        skip_ws();
        base_ = parse_iriref();
        if (dotted) {
            skip_ws();
            expect('.', "after @base directive");
        }
    }

    void parse_triples() {
        if (peek() == '[') {
            // blankNodePropertyList as subject, optionally followed by more
            // predicate-object pairs.
            StarTerm subject = parse_bnode_property_list();
            skip_ws();
            if (peek() != '.') parse_predicate_object_list(subject);
            return;
        }
        StarTerm subject = parse_subject();
        parse_predicate_object_list(subject);
    }

    void parse_predicate_object_list(const StarTerm& subject) {
        while (true) {
            skip_ws();
            Iri predicate = parse_verb();
            while (true) {
                skip_ws();
                StarTerm object = parse_object();
                emit(subject, predicate, object);
                skip_ws();
                if (peek() == ',') {
                    advance();
                    continue;
                }
                break;
            }
            if (peek() == ';') {
                advance();
                skip_ws();
                // trailing ';' before '.' is allowed
                if (peek() == '.' || peek() == ']') return;
                continue;
            }
            return;
        }
    }

    void emit(const StarTerm& s, const Iri& p, const StarTerm& o) {
        graph_.insert(StarTriple(s, p, o));
    }

    // --- terms ---

    StarTerm parse_subject() {
        skip_ws();
        token_start_ = here();
        char c = peek();
        if (c == '<' && peek(1) == '<') return StarTerm(parse_triple_x());
        if (c == '<') return StarTerm(parse_iri());
        if (c == '_') return StarTerm(parse_blank_node_label());
        if (c == '(') return parse_collection();
        if (c == '"' || c == '\'' || is_digit(static_cast<unsigned char>(c)) || c == '+' ||
            c == '-' || (c == '.' && is_digit(static_cast<unsigned char>(peek(1)))))
            fail("a literal cannot be the subject of a triple");
        if (starts_boolean()) fail("a literal cannot be the subject of a triple");
        return StarTerm(parse_prefixed_name());
    }

    Iri parse_verb() {
        token_start_ = here();
        if (peek() == 'a' && !is_pn_char_at(offset_ + 1) && peek(1) != ':')
            { advance(); return vocab::rdf_type(); }
        if (peek() == '<' && peek(1) == '<')
            fail("an embedded triple cannot be used as predicate");
        return parse_iri_or_pname();
    }

    StarTerm parse_object() {
        token_start_ = here();
        char c = peek();
        if (c == '<' && peek(1) == '<') return StarTerm(parse_triple_x());
        if (c == '<') return StarTerm(parse_iri());
        if (c == '_') return StarTerm(parse_blank_node_label());
        if (c == '(') return parse_collection();
        if (c == '[') return parse_bnode_property_list();
        if (c == '"' || c == '\'') return StarTerm(parse_string_literal());
        if (is_digit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')
            return StarTerm(parse_numeric_literal());
        if (starts_boolean()) return StarTerm(parse_boolean_literal());
        return StarTerm(parse_prefixed_name());
    }

    // tripleX ::= '<<' subjectX predicate objectX '>>'
    StarTriple parse_triple_x() {
        SourcePosition open = here();
        advance();
        advance();
        ++embed_depth_;
        if (embed_depth_ > max_nesting_)
            fail_at(open, "embedded triple exceeds maximum nesting depth " +
                              std::to_string(max_nesting_));
        StarTerm subject = parse_subject_x();
        skip_ws();
        Iri predicate = parse_verb();
        skip_ws();
        StarTerm object = parse_object_x();
        skip_ws();
        if (!(peek() == '>' && peek(1) == '>')) fail("expected '>>' closing an embedded triple");
        advance();
        advance();
        --embed_depth_;
        return StarTriple(subject, predicate, object);
    }

    StarTerm parse_subject_x() {
        skip_ws();
        token_start_ = here();
        char c = peek();
        if (c == '<' && peek(1) == '<') return StarTerm(parse_triple_x());
        if (c == '<') return StarTerm(parse_iri());
        if (c == '_') return StarTerm(parse_blank_node_label());
        if (c == '"' || c == '\'' || is_digit(static_cast<unsigned char>(c)) || c == '+' ||
            c == '-' || (c == '.' && is_digit(static_cast<unsigned char>(peek(1)))) ||
            starts_boolean())
            fail("a literal is not allowed as the subject of an embedded triple");
        if (c == '(' || c == '[')
            fail("collections and blank node property lists are not allowed inside embedded triples");
        return StarTerm(parse_prefixed_name());
    }

    StarTerm parse_object_x() {
        skip_ws();
        token_start_ = here();
        char c = peek();
        if (c == '<' && peek(1) == '<') return StarTerm(parse_triple_x());
        if (c == '<') return StarTerm(parse_iri());
        if (c == '_') return StarTerm(parse_blank_node_label());
        if (c == '(' || c == '[')
            fail("collections and blank node property lists are not allowed inside embedded triples");
        if (c == '"' || c == '\'') return StarTerm(parse_string_literal());
        if (is_digit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.')
            return StarTerm(parse_numeric_literal());
        if (starts_boolean()) return StarTerm(parse_boolean_literal());
        return StarTerm(parse_prefixed_name());
    }

    // --- IRIs ---

    Iri parse_iri_or_pname() {
        skip_ws();
        if (peek() == '<') return parse_iri();
        return parse_prefixed_name();
    }

    Iri parse_iri() { return Iri(resolve(parse_iriref())); }

    std::string parse_iriref() {
        SourcePosition start = here();
        expect('<', "to open an IRI");
        std::string out;
        while (true) {
            if (at_end()) fail_at(start, "unterminated IRI");
            char c = peek();
            if (c == '>') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                char e = at_end() ? '\0' : peek();
                if (e == 'u' || e == 'U') {
                    advance();
                    encode_utf8(parse_hex_escape(e == 'u' ? 4 : 8), out);
                } else {
                    fail("invalid escape in IRI");
                }
                continue;
            }
            unsigned char u = static_cast<unsigned char>(c);
            if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`')
                fail("character not allowed in IRI");
            out.push_back(advance());
        }
        return out;
    }

    std::string resolve(const std::string& ref) {
        if (iri_has_scheme(ref)) return ref;
        if (base_.empty())
            fail_at(token_start_, "relative IRI <" + ref + "> without a base");
        return resolve_iri(base_, ref);
    }

    std::string parse_pname_ns() {
        std::string prefix;
        while (!at_end() && peek() != ':') {
            if (is_ws(static_cast<unsigned char>(peek()))) break;
            prefix.push_back(advance());
        }
        expect(':', "in prefix name");
        if (!is_valid_pname_prefix(prefix)) fail("invalid prefix name '" + prefix + ":'");
        return prefix;
    }

    Iri parse_prefixed_name() {
        SourcePosition start = here();
        std::string prefix;
        while (!at_end() && peek() != ':') {
            std::size_t probe = offset_;
            char32_t cp = decode_utf8(input_, probe);
            if (!(is_pn_chars(cp) || cp == '.')) break;
            while (offset_ < probe) prefix.push_back(advance());
        }
        if (at_end() || peek() != ':')
            fail_at(start, "expected an RDF term");
        if (!is_valid_pname_prefix(prefix))
            fail_at(start, "invalid prefix name '" + prefix + ":'");
        advance(); // ':'
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end())
            fail_at(start, "unknown prefix '" + prefix + ":'");
        std::string local = parse_pn_local();
        return Iri(it->second + local);
    }

    std::string parse_pn_local() {
        std::string local;
        std::size_t pending_dots = 0;
        bool first = true;
        while (!at_end()) {
            char c = peek();
            if (c == '\\') {
                local.append(pending_dots, '.');
                pending_dots = 0;
                advance();
                char e = at_end() ? '\0' : advance();
                static const std::string escapable = "_~.-!$&'()*+,;=/?#@%";
                if (escapable.find(e) == std::string::npos)
                    fail("invalid local name escape '\\" + std::string(1, e) + "'");
                local.push_back(e);
                first = false;
                continue;
            }
            if (c == '%') {
                if (!(is_hex(static_cast<unsigned char>(peek(1))) &&
                      is_hex(static_cast<unsigned char>(peek(2)))))
                    fail("invalid percent escape in local name");
                local.append(pending_dots, '.');
                pending_dots = 0;
                local.push_back(advance());
                local.push_back(advance());
                local.push_back(advance());
                first = false;
                continue;
            }
            if (c == '.') {
                if (first) break; // a leading dot is never part of a local name
                ++pending_dots;
                advance();
                continue;
            }
            std::size_t probe = offset_;
            char32_t cp = decode_utf8(input_, probe);
            bool ok = first ? (is_pn_chars_u(cp) || cp == ':' || is_digit(cp))
                            : (is_pn_chars(cp) || cp == ':');
            if (!ok) break;
            local.append(pending_dots, '.');
            pending_dots = 0;
            while (offset_ < probe) local.push_back(advance());
            first = false;
        }
        // trailing dots belong to the statement, not the name
        rewind_dots(pending_dots);
        return local;
    }

    void rewind_dots(std::size_t count) {
        offset_ -= count;
        column_ -= count;
    }

    // --- blank nodes, collections, property lists ---

    BlankNode parse_blank_node_label() {
        SourcePosition start = here();
        advance(); // '_'
        expect(':', "in blank node label");
        std::string label;
        std::size_t pending_dots = 0;
        while (!at_end()) {
            char c = peek();
            if (c == '.') {
                if (label.empty()) break;
                ++pending_dots;
                advance();
                continue;
            }
            std::size_t probe = offset_;
            char32_t cp = decode_utf8(input_, probe);
            bool ok = label.empty() && pending_dots == 0 ? (is_pn_chars_u(cp) || is_digit(cp))
                                                         : is_pn_chars(cp);
            if (!ok) break;
            label.append(pending_dots, '.');
            pending_dots = 0;
            while (offset_ < probe) label.push_back(advance());
        }
        rewind_dots(pending_dots);
        if (label.empty() || !is_valid_blank_label(label))
            fail_at(start, "invalid blank node label");
        return BlankNode(label);
    }

    BlankNode fresh_bnode() {
        std::string label;
        do {
            label = "b" + std::to_string(bnode_counter_++);
        } while (used_blank_labels_.count(label) != 0);
        return BlankNode(label);
    }

    StarTerm parse_collection() {
        advance(); // '('
        std::vector<StarTerm> items;
        while (true) {
            skip_ws();
            if (at_end()) fail("unterminated collection");
            if (peek() == ')') {
                advance();
                break;
            }
            items.push_back(parse_object());
        }
        StarTerm tail{vocab::rdf_nil()};
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            StarTerm node{fresh_bnode()};
            emit(node, vocab::rdf_first(), *it);
            emit(node, vocab::rdf_rest(), tail);
            tail = node;
        }
        return tail;
    }

    StarTerm parse_bnode_property_list() {
        SourcePosition start = here();
        advance(); // '['
        skip_ws();
        if (peek() == ']') { // ANON
            advance();
            return StarTerm(fresh_bnode());
        }
        StarTerm node{fresh_bnode()};
        parse_predicate_object_list(node);
        skip_ws();
        if (at_end() || peek() != ']') fail_at(start, "unterminated blank node property list");
        advance();
        return node;
    }

    // --- literals ---

    bool starts_boolean() const {
        for (std::string_view word : {std::string_view("true"), std::string_view("false")}) {
            if (offset_ + word.size() > input_.size()) continue;
            if (input_.compare(offset_, word.size(), word) != 0) continue;
            std::size_t after = offset_ + word.size();
            if (after >= input_.size()) return true;
            std::size_t probe = after;
            char32_t cp = decode_utf8(input_, probe);
            if (!(is_pn_chars(cp) || cp == ':' || cp == '.')) return true;
            if (cp == '.') {
                // 'true.' ends the statement unless a name character follows
                std::size_t probe2 = probe;
                char32_t next = probe < input_.size() ? decode_utf8(input_, probe2) : ' ';
                if (!is_pn_chars(next)) return true;
            }
        }
        return false;
    }

    Literal parse_boolean_literal() {
        std::string word;
        while (!at_end() && peek() >= 'a' && peek() <= 'z') word.push_back(advance());
        return Literal::typed(word, vocab::xsd_boolean());
    }

    bool is_pn_char_at(std::size_t offset) const {
        if (offset >= input_.size()) return false;
        std::size_t probe = offset;
        return is_pn_chars(decode_utf8(input_, probe));
    }

    Literal parse_numeric_literal() {
        SourcePosition start = here();
        std::string lex;
        if (peek() == '+' || peek() == '-') lex.push_back(advance());
        bool digits_before = false, digits_after = false, has_dot = false, has_exp = false;
        while (is_digit(static_cast<unsigned char>(peek()))) {
            lex.push_back(advance());
            digits_before = true;
        }
        if (peek() == '.' && is_digit(static_cast<unsigned char>(peek(1)))) {
            has_dot = true;
            lex.push_back(advance());
            while (is_digit(static_cast<unsigned char>(peek()))) {
                lex.push_back(advance());
                digits_after = true;
            }
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (is_digit(static_cast<unsigned char>(peek(1))) ||
             ((peek(1) == '+' || peek(1) == '-') && is_digit(static_cast<unsigned char>(peek(2)))))) {
            has_exp = true;
            lex.push_back(advance());
            if (peek() == '+' || peek() == '-') lex.push_back(advance());
            while (is_digit(static_cast<unsigned char>(peek()))) lex.push_back(advance());
        }
        if (!digits_before && !digits_after) fail_at(start, "malformed numeric literal");
        if (has_exp) return Literal::typed(lex, vocab::xsd_double());
        if (has_dot) return Literal::typed(lex, vocab::xsd_decimal());
        return Literal::typed(lex, vocab::xsd_integer());
    }

    Literal parse_string_literal() {
        std::string lexical = parse_string_body();
        skip_ws();
        if (peek() == '@') {
            advance();
            std::string tag;
            while (!at_end() && ((peek() >= 'a' && peek() <= 'z') || (peek() >= 'A' && peek() <= 'Z') ||
                                 is_digit(static_cast<unsigned char>(peek())) || peek() == '-'))
                tag.push_back(advance());
            if (tag.empty()) fail("empty language tag");
            return Literal::lang_tagged(lexical, tag);
        }
        if (peek() == '^' && peek(1) == '^') {
            advance();
            advance();
            skip_ws();
            Iri datatype = parse_iri_or_pname();
            if (datatype == vocab::rdf_lang_string())
                fail("rdf:langString literals must use a language tag");
            if (datatype == vocab::xsd_string()) return Literal::str(lexical);
            return Literal::typed(lexical, datatype);
        }
        return Literal::str(lexical);
    }

    std::string parse_string_body() {
        SourcePosition start = here();
        char quote = advance();
        std::string out;
        while (true) {
            if (at_end()) fail_at(start, "unterminated string literal");
            char c = peek();
            if (c == quote) {
                advance();
                return out;
            }
            if (c == '\n' || c == '\r') fail_at(start, "newline in string literal");
            if (c == '\\') {
                advance();
                char e = at_end() ? '\0' : advance();
                switch (e) {
                    case 't': out.push_back('\t'); break;
                    case 'b': out.push_back('\b'); break;
                    case 'n': out.push_back('\n'); break;
                    case 'r': out.push_back('\r'); break;
                    case 'f': out.push_back('\f'); break;
                    case '"': out.push_back('"'); break;
                    case '\'': out.push_back('\''); break;
                    case '\\': out.push_back('\\'); break;
                    case 'u': encode_utf8(parse_hex_escape(4), out); break;
                    case 'U': encode_utf8(parse_hex_escape(8), out); break;
                    default: fail("invalid string escape '\\" + std::string(1, e) + "'");
                }
                continue;
            }
            out.push_back(advance());
        }
    }

    char32_t parse_hex_escape(int count) {
        char32_t cp = 0;
        for (int i = 0; i < count; ++i) {
            if (at_end() || !is_hex(static_cast<unsigned char>(peek())))
                fail("invalid unicode escape");
            char c = advance();
            cp <<= 4;
            if (c >= '0' && c <= '9')
                cp |= static_cast<char32_t>(c - '0');
            else if (c >= 'a' && c <= 'f')
                cp |= static_cast<char32_t>(c - 'a' + 10);
            else
                cp |= static_cast<char32_t>(c - 'A' + 10);
        }
        if (cp > 0x10FFFF) fail("unicode escape out of range");
        return cp;
    }

    // Labels appearing anywhere in the document are reserved so generated
    // blank nodes can never capture them. Over-approximation (e.g. a "_:x"
    // inside a string) is harmless.
    void collect_used_blank_labels() {
        for (std::size_t i = 0; i + 1 < input_.size(); ++i) {
            if (input_[i] != '_' || input_[i + 1] != ':') continue;
            std::size_t j = i + 2;
            std::string label;
            while (j < input_.size()) {
                std::size_t probe = j;
                char32_t cp = decode_utf8(input_, probe);
                if (!(is_pn_chars(cp) || cp == '.')) break;
                label.append(input_, j, probe - j);
                j = probe;
            }
            while (!label.empty() && label.back() == '.') label.pop_back();
            if (!label.empty()) used_blank_labels_.insert(label);
            i = j - 1;
        }
    }

    std::string_view input_;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    SourcePosition token_start_;

    StarGraph graph_;
    std::map<std::string, std::string> prefixes_;
    std::string base_;
    std::set<std::string> used_blank_labels_;
    std::size_t bnode_counter_ = 0;
    std::size_t embed_depth_ = 0;
    std::size_t max_nesting_;
};

} // namespace

std::string format_diagnostic(const Diagnostic& d) {
    const char* severity = d.severity == Severity::Error ? "error" : "warning";
    return std::to_string(d.position.line) + ":" + std::to_string(d.position.column) + ": " +
           severity + ": " + d.message;
}

ParseResult parse_turtlestar(std::string_view input, const ParseOptions& options) {
    return TurtleParser(input, options).run();
}

} // namespace rdfstar
