#include <algorithm>

#include "char_classes.hpp"
#include "rdfstar/query.hpp"
#include "rdfstar/vocab.hpp"

namespace rdfstar::query {

using namespace chars;

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Parse: return "parse";
        case Stage::Scope: return "scope";
        case Stage::Expand: return "expand";
        case Stage::Translate: return "translate";
        case Stage::Evaluate: return "evaluate";
    }
    return "?";
}

QueryError::QueryError(Stage s, SourcePosition pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         stage_name(s) + " error: " + message),
      stage(s),
      position(pos) {}

namespace {

class SparqlParser {
public:
    SparqlParser(std::string_view input, const ParseQueryOptions& options) : input_(input) {
        if (options.base) ast_.base = options.base;
    }

    QueryAst run() {
        try {
            parse_prologue();
            parse_select();
            skip_ws();
            if (match_keyword("WHERE")) skip_ws();
            ast_.where = parse_group();
            skip_ws();
            if (!at_end()) {
                std::string word = peek_word();
                for (const char* kw : {"GROUP", "ORDER", "LIMIT", "OFFSET", "HAVING", "VALUES"})
                    if (same_keyword(word, kw))
                        fail("unsupported feature: " + word + " clauses are not supported");
                fail("unexpected input after the WHERE group");
            }
        } catch (const QueryError&) {
            throw;
        } catch (const std::exception& e) {
            // term validation errors become positioned parse errors
            throw QueryError(Stage::Parse, here(), e.what());
        }
        return std::move(ast_);
    }

private:
    // --- cursor (same conventions as the Turtle parser) ---

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
            ++column_;
        }
        return c;
    }
    SourcePosition here() const { return {line_, column_, offset_}; }

    [[noreturn]] void fail(const std::string& message) const {
        throw QueryError(Stage::Parse, here(), message);
    }
    [[noreturn]] void fail_at(SourcePosition pos, const std::string& message) const {
        throw QueryError(Stage::Parse, pos, message);
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
        skip_ws();
        if (at_end() || peek() != c) fail("expected '" + std::string(1, c) + "' " + what);
        advance();
    }

    static bool same_keyword(std::string_view word, std::string_view keyword) {
        if (word.size() != keyword.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            char a = word[i], b = keyword[i];
            if (a >= 'a' && a <= 'z') a = static_cast<char>(a - 'a' + 'A');
            if (b >= 'a' && b <= 'z') b = static_cast<char>(b - 'a' + 'A');
            if (a != b) return false;
        }
        return true;
    }

    std::string peek_word() const {
        std::size_t i = offset_;
        std::string word;
        while (i < input_.size()) {
            char c = input_[i];
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
                word.push_back(c);
                ++i;
            } else {
                break;
            }
        }
        return word;
    }

    /// Consumes the keyword if it is next (case-insensitive) and not glued
    /// to a ':' (which would make it a prefixed name).
    bool match_keyword(std::string_view keyword) {
        skip_ws();
        std::string word = peek_word();
        if (!same_keyword(word, keyword)) return false;
        char after = peek(word.size());
        if (after == ':') return false;
        for (std::size_t i = 0; i < word.size(); ++i) advance();
        return true;
    }

    // --- prologue and select ---

    void parse_prologue() {
        while (true) {
            skip_ws();
            if (match_keyword("PREFIX")) {
                skip_ws();
                std::string prefix = parse_pname_ns();
                skip_ws();
                std::string iri = parse_iriref_text();
                prefixes_[prefix] = iri;
                ast_.prefixes.insert_or_assign(prefix, Iri(iri));
            } else if (match_keyword("BASE")) {
                skip_ws();
                ast_.base = Iri(parse_iriref_text());
            } else {
                break;
            }
        }
    }

    void parse_select() {
        skip_ws();
        std::string word = peek_word();
        for (const char* kw : {"CONSTRUCT", "ASK", "DESCRIBE"})
            if (same_keyword(word, kw))
                fail("unsupported feature: only SELECT queries are supported");
        if (!match_keyword("SELECT")) fail("expected SELECT");
        skip_ws();
        for (const char* kw : {"DISTINCT", "REDUCED"})
            if (same_keyword(peek_word(), kw))
                fail(std::string("unsupported feature: SELECT ") + kw + " is not supported");
        if (peek() == '*') {
            advance();
            ast_.select_all = true;
            return;
        }
        while (true) {
            skip_ws();
            if (peek() == '?' || peek() == '$') {
                ast_.select_vars.push_back(parse_variable());
            } else if (peek() == '(') {
                fail("unsupported feature: expressions in the SELECT clause are not supported");
            } else {
                break;
            }
        }
        if (ast_.select_vars.empty()) fail("SELECT needs '*' or at least one variable");
    }

    Variable parse_variable() {
        SourcePosition start = here();
        advance(); // '?' or '$'
        std::string name;
        while (!at_end()) {
            std::size_t probe = offset_;
            char32_t cp = decode_utf8(input_, probe);
            if (!(is_pn_chars_u(cp) || is_digit(cp) || cp == 0x00B7 ||
                  (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x203F && cp <= 0x2040)))
                break;
            while (offset_ < probe) name.push_back(advance());
        }
        if (name.empty() || !is_valid_varname(name)) fail_at(start, "invalid variable name");
        return Variable(name);
    }

    // --- group graph pattern ---

    GroupPattern parse_group() {
        expect('{', "to open a group graph pattern");
        GroupPattern group;
        while (true) {
            skip_ws();
            if (at_end()) fail("unterminated group graph pattern");
            if (peek() == '}') {
                advance();
                return group;
            }
            if (peek() == '{') {
                parse_group_or_union(group);
                skip_ws();
                if (peek() == '.') advance();
                continue;
            }
            std::string word = peek_word();
            if (same_keyword(word, "OPTIONAL")) {
                match_keyword("OPTIONAL");
                skip_ws();
                OptionalClause opt{std::make_shared<GroupPattern>(parse_group())};
                group.elements.emplace_back(std::move(opt));
                skip_ws();
                if (peek() == '.') advance();
                continue;
            }
            if (same_keyword(word, "FILTER")) {
                match_keyword("FILTER");
                group.elements.emplace_back(FilterClause{parse_constraint()});
                skip_ws();
                if (peek() == '.') advance();
                continue;
            }
            if (same_keyword(word, "BIND")) {
                match_keyword("BIND");
                group.elements.emplace_back(parse_bind());
                skip_ws();
                if (peek() == '.') advance();
                continue;
            }
            for (const char* kw : {"MINUS", "GRAPH", "SERVICE", "VALUES", "EXISTS"})
                if (same_keyword(word, kw))
                    fail(std::string("unsupported feature: ") + kw + " is not supported");
            parse_triples_block(group);
        }
    }

    void parse_group_or_union(GroupPattern& out) {
        UnionClause u;
        u.branches.push_back(std::make_shared<GroupPattern>(parse_group()));
        while (true) {
            skip_ws();
            if (!match_keyword("UNION")) break;
            skip_ws();
            u.branches.push_back(std::make_shared<GroupPattern>(parse_group()));
        }
        if (u.branches.size() == 1) {
            out.elements.emplace_back(NestedGroup{u.branches[0]});
        } else {
            out.elements.emplace_back(std::move(u));
        }
    }

    void parse_triples_block(GroupPattern& group) {
        TriplesBlock block;
        while (true) {
            block.statements.push_back(parse_statement());
            skip_ws();
            if (peek() == '.') {
                advance();
                skip_ws();
            } else {
                break;
            }
            // A '.' may be followed by more triples or by the group's end
            // or another clause.
            if (at_end() || peek() == '}' || peek() == '{') break;
            std::string word = peek_word();
            bool clause = false;
            for (const char* kw : {"OPTIONAL", "FILTER", "BIND", "MINUS", "GRAPH", "SERVICE",
                                   "VALUES", "UNION"})
                if (same_keyword(word, kw) && peek(word.size()) != ':') clause = true;
            if (clause) break;
        }
        group.elements.emplace_back(std::move(block));
    }

    AstStatement parse_statement() {
        AstStatement st;
        st.subject = parse_term_node(Slot::Subject);
        while (true) {
            skip_ws();
            AstStatement::VerbObjects vo;
            vo.verb = parse_verb_node();
            while (true) {
                skip_ws();
                vo.objects.push_back(parse_term_node(Slot::Object));
                skip_ws();
                if (peek() == ',') {
                    advance();
                    continue;
                }
                break;
            }
            st.properties.push_back(std::move(vo));
            if (peek() == ';') {
                advance();
                skip_ws();
                if (peek() == '.' || peek() == '}' || at_end()) break;
                continue;
            }
            break;
        }
        return st;
    }

    enum class Slot { Subject, Object, Embedded };

    AstNodePtr parse_verb_node() {
        SourcePosition pos = here();
        if (peek() == '^' || peek() == '!' || peek() == '(')
            fail("unsupported feature: property paths are not supported (only a single forward IRI)");
        AstNodePtr verb;
        if (peek() == 'a' && !is_name_char_at(offset_ + 1) && peek(1) != ':') {
            advance();
            verb = node(AstIriRef{AstIriRef::Form::KeywordA, "", "", ""}, pos);
        } else if (peek() == '?' || peek() == '$') {
            verb = node(parse_variable(), pos);
        } else if (peek() == '<') {
            if (peek(1) == '<') fail("an embedded triple pattern cannot be used as predicate");
            verb = node(parse_iri_ref(), pos);
        } else {
            verb = node(parse_prefixed_ref(), pos);
        }
        // A path operator after the predicate is out of the fragment.
        if (peek() == '/' || peek() == '|' || peek() == '*' || peek() == '+')
            fail("unsupported feature: property paths are not supported (only a single forward IRI)");
        std::size_t probe = offset_;
        while (probe < input_.size() && is_ws(static_cast<unsigned char>(input_[probe]))) ++probe;
        if (probe < input_.size() && (input_[probe] == '/' || input_[probe] == '|'))
            fail("unsupported feature: property paths are not supported (only a single forward IRI)");
        return verb;
    }

    AstNodePtr parse_term_node(Slot slot) {
        skip_ws();
        SourcePosition pos = here();
        char c = peek();
        if (c == '<' && peek(1) == '<') return parse_embtp();
        if (c == '<') return node(parse_iri_ref(), pos);
        if (c == '?' || c == '$') return node(parse_variable(), pos);
        if (c == '_') {
            if (slot == Slot::Embedded)
                fail_at(pos, "blank nodes are not allowed in embedded triple patterns");
            return node(parse_blank_node(), pos);
        }
        if (c == '[')
            fail("unsupported feature: blank node property lists are not supported in queries");
        if (c == '(')
            fail("unsupported feature: collections are not supported in queries");
        if (c == '"' || c == '\'') return node(parse_string_literal(), pos);
        if (is_digit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
            (c == '.' && is_digit(static_cast<unsigned char>(peek(1)))))
            return node(parse_numeric_literal(), pos);
        if (starts_boolean()) return node(parse_boolean_literal(), pos);
        return node(parse_prefixed_ref(), pos);
    }

    AstNodePtr parse_embtp() {
        SourcePosition pos = here();
        advance();
        advance(); // '<<'
        AstEmbedded emb;
        emb.subject = parse_term_node(Slot::Embedded);
        skip_ws();
        emb.predicate = parse_verb_node();
        emb.object = parse_term_node(Slot::Embedded);
        skip_ws();
        if (!(peek() == '>' && peek(1) == '>'))
            fail("expected '>>' closing an embedded triple pattern");
        advance();
        advance();
        return node(std::move(emb), pos);
    }

    // --- BIND and FILTER ---

    BindClause parse_bind() {
        expect('(', "after BIND");
        skip_ws();
        std::variant<AstNodePtr, Variable, AstLiteral, AstIriRef> value;
        char c = peek();
        if (c == '<' && peek(1) == '<') {
            value = parse_embtp();
        } else if (c == '?' || c == '$') {
            value = parse_variable();
        } else if (c == '<') {
            value = parse_iri_ref();
        } else if (c == '"' || c == '\'') {
            value = parse_string_literal();
        } else if (is_digit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
                   (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
            value = parse_numeric_literal();
        } else if (starts_boolean()) {
            value = parse_boolean_literal();
        } else {
            std::string word = peek_word();
            if (!word.empty() && peek(word.size()) == '(')
                fail("unsupported feature: only constants, variables, and embedded triple "
                     "patterns are supported in BIND");
            value = parse_prefixed_ref();
        }
        skip_ws();
        if (!match_keyword("AS")) {
            static const std::string operators = "+-*/<>=!&|";
            if (operators.find(peek()) != std::string::npos)
                fail("unsupported feature: only constants, variables, and embedded triple "
                     "patterns are supported in BIND");
            fail("expected AS in BIND");
        }
        skip_ws();
        if (!(peek() == '?' || peek() == '$')) fail("expected a variable after AS");
        SourcePosition var_pos = here();
        Variable target = parse_variable();
        expect(')', "closing BIND");
        return BindClause{std::move(value), std::move(target), var_pos};
    }

    AstConditionPtr parse_constraint() {
        skip_ws();
        if (match_keyword("BOUND")) return parse_bound_tail();
        if (peek() == '(') {
            advance();
            auto cond = parse_or_condition();
            expect(')', "closing the filter condition");
            return cond;
        }
        fail("expected a filter condition: BOUND(?v) or a parenthesized expression");
    }

    AstConditionPtr parse_bound_tail() {
        SourcePosition pos = here();
        expect('(', "after BOUND");
        skip_ws();
        if (!(peek() == '?' || peek() == '$')) fail("expected a variable in BOUND");
        SourcePosition var_pos = here();
        Variable v = parse_variable();
        expect(')', "closing BOUND");
        auto cond = std::make_shared<AstCondition>();
        cond->kind = AstCondition::Kind::Bound;
        cond->lhs = node(std::move(v), var_pos);
        cond->position = pos;
        return cond;
    }

    AstConditionPtr parse_or_condition() {
        auto left = parse_and_condition();
        while (true) {
            skip_ws();
            if (!(peek() == '|' && peek(1) == '|')) break;
            SourcePosition pos = here();
            advance();
            advance();
            auto right = parse_and_condition();
            auto cond = std::make_shared<AstCondition>();
            cond->kind = AstCondition::Kind::Or;
            cond->left = std::move(left);
            cond->right = std::move(right);
            cond->position = pos;
            left = std::move(cond);
        }
        return left;
    }

    AstConditionPtr parse_and_condition() {
        auto left = parse_unary_condition();
        while (true) {
            skip_ws();
            if (!(peek() == '&' && peek(1) == '&')) break;
            SourcePosition pos = here();
            advance();
            advance();
            auto right = parse_unary_condition();
            auto cond = std::make_shared<AstCondition>();
            cond->kind = AstCondition::Kind::And;
            cond->left = std::move(left);
            cond->right = std::move(right);
            cond->position = pos;
            left = std::move(cond);
        }
        return left;
    }

    AstConditionPtr parse_unary_condition() {
        skip_ws();
        if (peek() == '!') {
            SourcePosition pos = here();
            advance();
            auto inner = parse_unary_condition();
            auto cond = std::make_shared<AstCondition>();
            cond->kind = AstCondition::Kind::Not;
            cond->left = std::move(inner);
            cond->position = pos;
            return cond;
        }
        if (match_keyword("BOUND")) return parse_bound_tail();
        if (peek() == '(') {
            advance();
            auto cond = parse_or_condition();
            expect(')', "closing the filter condition");
            return cond;
        }
        return parse_equality();
    }

    AstConditionPtr parse_equality() {
        SourcePosition pos = here();
        AstNodePtr lhs = parse_condition_operand();
        skip_ws();
        if (peek() == '!' && peek(1) == '=')
            fail("unsupported feature: only '=' comparisons are supported in filters");
        if (peek() == '<' || peek() == '>')
            fail("unsupported feature: only '=' comparisons are supported in filters");
        if (peek() != '=') fail("expected '=' in filter condition");
        advance();
        AstNodePtr rhs = parse_condition_operand();
        auto cond = std::make_shared<AstCondition>();
        cond->kind = AstCondition::Kind::Equals;
        cond->lhs = std::move(lhs);
        cond->rhs = std::move(rhs);
        cond->position = pos;
        return cond;
    }

    AstNodePtr parse_condition_operand() {
        skip_ws();
        SourcePosition pos = here();
        char c = peek();
        if (c == '?' || c == '$') return node(parse_variable(), pos);
        if (c == '<' && peek(1) == '<')
            fail("unsupported feature: embedded triple patterns cannot appear in filters");
        if (c == '<') return node(parse_iri_ref(), pos);
        if (c == '"' || c == '\'') return node(parse_string_literal(), pos);
        if (is_digit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
            (c == '.' && is_digit(static_cast<unsigned char>(peek(1)))))
            return node(parse_numeric_literal(), pos);
        if (starts_boolean()) return node(parse_boolean_literal(), pos);
        if (c == '_') fail("blank nodes cannot be compared in filters");
        return node(parse_prefixed_ref(), pos);
    }

    // --- terminals ---

    template <typename T>
    AstNodePtr node(T value, SourcePosition pos) {
        return std::make_shared<AstNode>(AstNode::Value(std::move(value)), pos);
    }

    std::string parse_iriref_text() {
        SourcePosition start = here();
        if (peek() != '<') fail("expected an IRI");
        advance();
        std::string out;
        while (true) {
            if (at_end()) fail_at(start, "unterminated IRI");
            char c = peek();
            if (c == '>') {
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                char e = at_end() ? '\0' : peek();
                if (e == 'u' || e == 'U') {
                    advance();
                    encode_utf8(parse_hex_escape(e == 'u' ? 4 : 8), out);
                    continue;
                }
                fail("invalid escape in IRI");
            }
            unsigned char u = static_cast<unsigned char>(c);
            if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`')
                fail("character not allowed in IRI");
            out.push_back(advance());
        }
    }

    AstIriRef parse_iri_ref() {
        std::string text = parse_iriref_text();
        AstIriRef ref;
        ref.form = AstIriRef::Form::Absolute;
        ref.value = std::move(text);
        // Relative references are resolved during expansion.
        if (ref.value.find(':') == std::string::npos || !looks_absolute(ref.value))
            ref.form = AstIriRef::Form::Relative;
        return ref;
    }

    static bool looks_absolute(const std::string& iri) {
        if (iri.empty()) return false;
        char c = iri[0];
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
        for (char d : iri) {
            if (d == ':') return true;
            bool ok = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') ||
                      d == '+' || d == '-' || d == '.';
            if (!ok) return false;
        }
        return false;
    }

    std::string parse_pname_ns() {
        std::string prefix;
        while (!at_end() && peek() != ':') {
            if (is_ws(static_cast<unsigned char>(peek()))) break;
            prefix.push_back(advance());
        }
        if (at_end() || peek() != ':') fail("expected ':' in prefix declaration");
        advance();
        if (!is_valid_pname_prefix(prefix)) fail("invalid prefix name '" + prefix + ":'");
        return prefix;
    }

    AstIriRef parse_prefixed_ref() {
        SourcePosition start = here();
        std::string prefix;
        while (!at_end() && peek() != ':') {
            std::size_t probe = offset_;
            char32_t cp = decode_utf8(input_, probe);
            if (!(is_pn_chars(cp) || cp == '.')) break;
            while (offset_ < probe) prefix.push_back(advance());
        }
        if (at_end() || peek() != ':') fail_at(start, "expected an RDF term");
        if (!is_valid_pname_prefix(prefix)) fail_at(start, "invalid prefix name '" + prefix + ":'");
        advance();
        std::string local = parse_pn_local();
        AstIriRef ref;
        ref.form = AstIriRef::Form::Prefixed;
        ref.prefix = std::move(prefix);
        ref.local = std::move(local);
        return ref;
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
                if (first) break;
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
        offset_ -= pending_dots;
        column_ -= pending_dots;
        return local;
    }

    BlankNode parse_blank_node() {
        SourcePosition start = here();
        advance(); // '_'
        if (peek() != ':') fail("expected ':' in blank node label");
        advance();
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
        offset_ -= pending_dots;
        column_ -= pending_dots;
        if (label.empty() || !is_valid_blank_label(label)) fail_at(start, "invalid blank node label");
        return BlankNode(label);
    }

    bool is_name_char_at(std::size_t offset) const {
        if (offset >= input_.size()) return false;
        std::size_t probe = offset;
        return is_pn_chars(decode_utf8(input_, probe));
    }

    bool starts_boolean() const {
        for (std::string_view word : {std::string_view("true"), std::string_view("false")}) {
            if (input_.compare(offset_, word.size(), word) != 0) continue;
            std::size_t after = offset_ + word.size();
            if (after >= input_.size()) return true;
            if (!is_name_char_at(after) && input_[after] != ':') return true;
        }
        return false;
    }

    AstLiteral parse_boolean_literal() {
        std::string word;
        while (!at_end() && peek() >= 'a' && peek() <= 'z') word.push_back(advance());
        AstLiteral lit;
        lit.lexical = word;
        lit.datatype = AstIriRef{AstIriRef::Form::Absolute, vocab::xsd_boolean().value(), "", ""};
        return lit;
    }

    AstLiteral parse_numeric_literal() {
        SourcePosition start = here();
        std::string lex;
        if (peek() == '+' || peek() == '-') lex.push_back(advance());
        bool digits = false, has_dot = false, has_exp = false;
        while (is_digit(static_cast<unsigned char>(peek()))) {
            lex.push_back(advance());
            digits = true;
        }
        if (peek() == '.' && is_digit(static_cast<unsigned char>(peek(1)))) {
            has_dot = true;
            lex.push_back(advance());
            while (is_digit(static_cast<unsigned char>(peek()))) {
                lex.push_back(advance());
                digits = true;
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
        if (!digits) fail_at(start, "malformed numeric literal");
        AstLiteral lit;
        lit.lexical = lex;
        const Iri& dt = has_exp ? vocab::xsd_double()
                                : (has_dot ? vocab::xsd_decimal() : vocab::xsd_integer());
        lit.datatype = AstIriRef{AstIriRef::Form::Absolute, dt.value(), "", ""};
        return lit;
    }

    AstLiteral parse_string_literal() {
        AstLiteral lit;
        lit.lexical = parse_string_body();
        if (peek() == '@') {
            advance();
            std::string tag;
            while (!at_end() &&
                   ((peek() >= 'a' && peek() <= 'z') || (peek() >= 'A' && peek() <= 'Z') ||
                    is_digit(static_cast<unsigned char>(peek())) || peek() == '-'))
                tag.push_back(advance());
            if (tag.empty()) fail("empty language tag");
            lit.language = tag;
            return lit;
        }
        if (peek() == '^' && peek(1) == '^') {
            advance();
            advance();
            skip_ws();
            if (peek() == '<') {
                lit.datatype = parse_iri_ref();
            } else {
                lit.datatype = parse_prefixed_ref();
            }
        }
        return lit;
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

    std::string_view input_;
    std::size_t offset_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;

    QueryAst ast_;
    std::map<std::string, std::string> prefixes_;
};

} // namespace

QueryAst parse_query(std::string_view input, const ParseQueryOptions& options) {
    return SparqlParser(input, options).run();
}

bool ast_equal(const AstNode& a, const AstNode& b) {
    if (a.value.index() != b.value.index()) return false;
    if (std::holds_alternative<Variable>(a.value))
        return std::get<Variable>(a.value) == std::get<Variable>(b.value);
    if (std::holds_alternative<AstIriRef>(a.value))
        return std::get<AstIriRef>(a.value) == std::get<AstIriRef>(b.value);
    if (std::holds_alternative<AstLiteral>(a.value))
        return std::get<AstLiteral>(a.value) == std::get<AstLiteral>(b.value);
    if (std::holds_alternative<BlankNode>(a.value))
        return std::get<BlankNode>(a.value) == std::get<BlankNode>(b.value);
    const AstEmbedded& ea = std::get<AstEmbedded>(a.value);
    const AstEmbedded& eb = std::get<AstEmbedded>(b.value);
    return ast_equal(*ea.subject, *eb.subject) && ast_equal(*ea.predicate, *eb.predicate) &&
           ast_equal(*ea.object, *eb.object);
}

} // namespace rdfstar::query
