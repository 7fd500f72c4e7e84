#ifndef RDFSTAR_PATTERN_HPP
#define RDFSTAR_PATTERN_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rdfstar/term.hpp"

namespace rdfstar {

/// A query variable, stored without its '?' sigil.
class Variable {
public:
    explicit Variable(std::string name);

    const std::string& name() const { return name_; }

    friend bool operator==(const Variable& a, const Variable& b) { return a.name_ == b.name_; }
    friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
    friend bool operator<(const Variable& a, const Variable& b) { return a.name_ < b.name_; }

private:
    std::string name_;
};

class TriplePatternStar;
using PatternPtr = std::shared_ptr<const TriplePatternStar>;

/// One position of a triple* pattern: a variable, a constant term, a ground
/// triple value, or a nested (blank-node-free) pattern. Nested patterns
/// that happen to be fully ground are normalized to their triple value.
class PatternTerm {
public:
    PatternTerm(Variable v);
    PatternTerm(Iri iri);
    PatternTerm(BlankNode bnode);
    PatternTerm(Literal literal);
    PatternTerm(StarTerm term);

    /// Embeds a pattern. Throws std::invalid_argument if the pattern
    /// mentions a blank node at any depth.
    static PatternTerm embedded(TriplePatternStar pattern);

    bool is_variable() const { return std::holds_alternative<Variable>(value_); }
    bool is_iri() const { return std::holds_alternative<Iri>(value_); }
    bool is_bnode() const { return std::holds_alternative<BlankNode>(value_); }
    bool is_literal() const { return std::holds_alternative<Literal>(value_); }
    bool is_triple() const { return std::holds_alternative<TriplePtr>(value_); }
    bool is_pattern() const { return std::holds_alternative<PatternPtr>(value_); }
    /// Constant (non-variable, non-pattern) position.
    bool is_ground_term() const { return !is_variable() && !is_pattern(); }

    const Variable& variable() const { return std::get<Variable>(value_); }
    const Iri& iri() const { return std::get<Iri>(value_); }
    const BlankNode& bnode() const { return std::get<BlankNode>(value_); }
    const Literal& literal() const { return std::get<Literal>(value_); }
    const StarTriple& triple() const { return *std::get<TriplePtr>(value_); }
    const TriplePatternStar& pattern() const { return *std::get<PatternPtr>(value_); }

    /// The constant value of a ground position, as a term.
    StarTerm as_term() const;

    friend bool operator==(const PatternTerm& a, const PatternTerm& b);
    friend bool operator!=(const PatternTerm& a, const PatternTerm& b) { return !(a == b); }
    friend bool operator<(const PatternTerm& a, const PatternTerm& b);

private:
    struct Raw {};
    PatternTerm(Raw, std::variant<Variable, Iri, BlankNode, Literal, TriplePtr, PatternPtr> v)
        : value_(std::move(v)) {}

    std::variant<Variable, Iri, BlankNode, Literal, TriplePtr, PatternPtr> value_;
};

/// A triple pattern whose subject and object may be nested patterns.
/// Nested patterns are blank-node-free; the predicate is a variable or an
/// IRI. Literals are accepted in subject position (they simply never
/// match).
class TriplePatternStar {
public:
    TriplePatternStar(PatternTerm subject, PatternTerm predicate, PatternTerm object);

    const PatternTerm& subject() const { return subject_; }
    const PatternTerm& predicate() const { return predicate_; }
    const PatternTerm& object() const { return object_; }

    std::size_t depth() const { return depth_; }

    friend bool operator==(const TriplePatternStar& a, const TriplePatternStar& b);
    friend bool operator!=(const TriplePatternStar& a, const TriplePatternStar& b) { return !(a == b); }
    friend bool operator<(const TriplePatternStar& a, const TriplePatternStar& b);

private:
    PatternTerm subject_;
    PatternTerm predicate_;
    PatternTerm object_;
    std::size_t depth_;
};

int compare(const PatternTerm& a, const PatternTerm& b);
int compare(const TriplePatternStar& a, const TriplePatternStar& b);

/// Variables mentioned anywhere in the pattern (nested patterns included,
/// ground triple values contain none).
std::set<Variable> pattern_variables(const TriplePatternStar& tp);

/// Blank nodes mentioned in pattern positions. Blank nodes inside ground
/// triple values are data, not pattern blank nodes, and are not collected.
std::set<BlankNode> pattern_bnodes(const TriplePatternStar& tp);

/// Converts a variable-free pattern to the triple it denotes. Returns
/// nullopt if a variable remains or the subject is a literal.
std::optional<StarTriple> pattern_to_triple(const TriplePatternStar& tp);

/// Builds the (ground) pattern matching exactly one triple.
TriplePatternStar pattern_from_triple(const StarTriple& t);

/// A partial map from variables to terms or triples.
class SolutionMapping {
public:
    SolutionMapping() = default;

    bool bound(const Variable& v) const { return bindings_.count(v) != 0; }
    const StarTerm& at(const Variable& v) const;

    /// Binds v; throws std::logic_error if v is already bound.
    void bind(Variable v, StarTerm value);

    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    const std::map<Variable, StarTerm>& bindings() const { return bindings_; }

    friend bool operator==(const SolutionMapping& a, const SolutionMapping& b) {
        return a.bindings_ == b.bindings_;
    }
    friend bool operator!=(const SolutionMapping& a, const SolutionMapping& b) { return !(a == b); }
    friend bool operator<(const SolutionMapping& a, const SolutionMapping& b);

private:
    std::map<Variable, StarTerm> bindings_;
};

/// True iff every shared variable is bound to deeply equal values.
bool compatible(const SolutionMapping& a, const SolutionMapping& b);

/// Union of two compatible mappings; throws std::invalid_argument
/// otherwise.
SolutionMapping merge(const SolutionMapping& a, const SolutionMapping& b);

/// Substitutes bound variables throughout tp, recursively through nested
/// patterns. Unbound variables are left in place.
TriplePatternStar apply(const SolutionMapping& eta, const TriplePatternStar& tp);

class FilterCondition;
using FilterPtr = std::shared_ptr<const FilterCondition>;

/// Filter conditions: bound(?v), ?v = constant, ?x = ?y, and the boolean
/// connectives. Equality constants are IRIs or literals only.
class FilterCondition {
public:
    enum class Kind { Bound, EqualsConst, EqualsVars, Not, Or, And };

    static FilterPtr bound(Variable v);
    static FilterPtr equals_const(Variable v, StarTerm constant);
    static FilterPtr equals_vars(Variable x, Variable y);
    static FilterPtr negation(FilterPtr inner);
    static FilterPtr disjunction(FilterPtr left, FilterPtr right);
    static FilterPtr conjunction(FilterPtr left, FilterPtr right);

    Kind kind() const { return kind_; }
    const Variable& var() const { return vars_[0]; }
    const Variable& var_other() const { return vars_[1]; }
    const StarTerm& constant() const { return *constant_; }
    const FilterPtr& left() const { return left_; }
    const FilterPtr& right() const { return right_; }

    /// A mapping satisfies the condition per the six-case definition;
    /// equality over unbound variables is simply unsatisfied.
    bool satisfied_by(const SolutionMapping& eta) const;

private:
    FilterCondition(Kind k) : kind_(k) {}

    Kind kind_;
    std::vector<Variable> vars_;
    std::optional<StarTerm> constant_;
    FilterPtr left_;
    FilterPtr right_;
};

} // namespace rdfstar

#endif
