#ifndef RDFSTAR_QUERY_HPP
#define RDFSTAR_QUERY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rdfstar/algebra.hpp"
#include "rdfstar/turtle.hpp"

namespace rdfstar::query {

/// Pipeline stage that produced an error.
enum class Stage { Parse, Scope, Expand, Translate, Evaluate };

const char* stage_name(Stage s);

/// Positioned error from any stage of the query pipeline.
class QueryError : public std::runtime_error {
public:
    QueryError(Stage stage, SourcePosition position, const std::string& message);

    Stage stage;
    SourcePosition position;
};

// --- Abstract syntax -----------------------------------------------------
//
// The AST keeps surface abbreviations: prefixed names and 'a' are not
// resolved and predicate/object lists are not flattened until
// expand_syntax runs.

struct AstNode;
using AstNodePtr = std::shared_ptr<const AstNode>;

/// IRI reference as written: absolute, relative (resolved against the
/// base), prefixed, or the keyword 'a'.
struct AstIriRef {
    enum class Form { Absolute, Relative, Prefixed, KeywordA };
    Form form = Form::Absolute;
    std::string value;  // absolute/relative IRI text
    std::string prefix; // prefixed form
    std::string local;

    friend bool operator==(const AstIriRef&, const AstIriRef&) = default;
};

struct AstLiteral {
    std::string lexical;
    std::optional<std::string> language;
    std::optional<AstIriRef> datatype; // absent means xsd:string

    friend bool operator==(const AstLiteral&, const AstLiteral&) = default;
};

struct AstEmbedded {
    AstNodePtr subject;
    AstNodePtr predicate;
    AstNodePtr object;
};

/// A term position in the query: variable, IRI reference, literal, blank
/// node, or embedded triple pattern.
struct AstNode {
    using Value = std::variant<Variable, AstIriRef, AstLiteral, BlankNode, AstEmbedded>;

    AstNode(Value v, SourcePosition pos) : value(std::move(v)), position(pos) {}

    Value value;
    SourcePosition position;
};

bool ast_equal(const AstNode& a, const AstNode& b);

/// "subject verb o1, o2 ; verb2 o3" before expansion.
struct AstStatement {
    AstNodePtr subject;
    struct VerbObjects {
        AstNodePtr verb;
        std::vector<AstNodePtr> objects;
    };
    std::vector<VerbObjects> properties;
};

struct AstCondition;
using AstConditionPtr = std::shared_ptr<const AstCondition>;

struct AstCondition {
    enum class Kind { Bound, Equals, Not, Or, And };
    Kind kind = Kind::Bound;
    std::optional<AstNodePtr> lhs; // Equals operands; Bound variable in lhs
    std::optional<AstNodePtr> rhs;
    AstConditionPtr left;
    AstConditionPtr right;
    SourcePosition position;
};

struct GroupPattern;

struct TriplesBlock {
    std::vector<AstStatement> statements;
};

struct BindClause {
    // Embedded triple pattern, or a plain expression restricted to a
    // constant or a variable copy.
    std::variant<AstNodePtr, Variable, AstLiteral, AstIriRef> value;
    Variable target;
    SourcePosition position;
    bool is_embedded() const { return std::holds_alternative<AstNodePtr>(value); }
};

struct FilterClause {
    AstConditionPtr condition;
};

struct OptionalClause {
    std::shared_ptr<GroupPattern> group;
};

struct UnionClause {
    std::vector<std::shared_ptr<GroupPattern>> branches; // left-folded
};

struct NestedGroup {
    std::shared_ptr<GroupPattern> group;
};

using GroupElement =
    std::variant<TriplesBlock, BindClause, FilterClause, OptionalClause, UnionClause, NestedGroup>;

struct GroupPattern {
    std::vector<GroupElement> elements;
};

struct QueryAst {
    std::map<std::string, Iri> prefixes;
    std::optional<Iri> base;
    bool select_all = false;
    std::vector<Variable> select_vars;
    GroupPattern where;
};

struct ParseQueryOptions {
    std::optional<Iri> base;
};

/// Parses the SPARQL* core fragment: SELECT queries over groups of triple
/// blocks with embedded triple patterns, BIND, FILTER, OPTIONAL, and
/// UNION. Out-of-fragment constructs (property paths beyond a single
/// forward IRI, aggregates, ...) raise an unsupported-feature QueryError.
QueryAst parse_query(std::string_view input, const ParseQueryOptions& options = {});

struct ScopeViolation {
    Variable variable;
    SourcePosition position;
    std::string message;
};

struct ScopeReport {
    std::vector<ScopeViolation> violations;
    /// Variables in scope of the whole WHERE group, in first-appearance
    /// order.
    std::vector<Variable> in_scope;
    bool ok() const { return violations.empty(); }
};

/// Computes in-scope variables (occurrences inside embedded patterns count,
/// at any nesting level) and checks every BIND target against the
/// preceding elements of its group.
ScopeReport check_scope(const QueryAst& ast);

/// Expands surface abbreviations: flattens predicate/object lists into
/// simple statements and resolves prefixed names, 'a', relative IRI
/// references, and literal datatypes everywhere, including inside embedded
/// triple patterns. Idempotent.
QueryAst expand_syntax(const QueryAst& ast);

/// Converts an expanded term node to a pattern term; embedded triple
/// patterns become nested patterns, everything else maps to itself.
PatternTerm lift(const AstNode& node);

struct TranslatedQuery {
    ExprPtr expr;
    std::vector<Variable> projection;
};

/// Translates an expanded, scope-checked AST to the algebra: adjacent
/// triple patterns collect into BGPs (with lift applied to subjects and
/// objects), BIND with an embedded pattern becomes TR joined at its group
/// position, groups left-fold with filters applied at group end.
TranslatedQuery translate(const QueryAst& ast);

struct QueryResult {
    std::vector<Variable> variables; // projection, in SELECT order
    SolutionMultiset solutions;
};

/// Full pipeline: parse, scope-check, expand, translate, evaluate,
/// project. The graph must be frozen.
QueryResult execute_query(std::string_view query_text, const StarGraph& g,
                          const ParseQueryOptions& options = {});

} // namespace rdfstar::query

#endif
