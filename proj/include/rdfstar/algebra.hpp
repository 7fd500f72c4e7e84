#ifndef RDFSTAR_ALGEBRA_HPP
#define RDFSTAR_ALGEBRA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rdfstar/graph.hpp"
#include "rdfstar/pattern.hpp"

namespace rdfstar {

/// A multiset of solution mappings: the underlying set plus a cardinality
/// for each member. Iteration order is canonical.
class SolutionMultiset {
public:
    SolutionMultiset() = default;

    void add(SolutionMapping eta, std::uint64_t count = 1);

    /// 0 for absent mappings.
    std::uint64_t card(const SolutionMapping& eta) const;

    bool contains(const SolutionMapping& eta) const { return entries_.count(eta) != 0; }
    std::size_t distinct_size() const { return entries_.size(); }
    std::uint64_t total_size() const;
    bool empty() const { return entries_.empty(); }

    const std::map<SolutionMapping, std::uint64_t>& entries() const { return entries_; }

    /// Canonical text dump, one "bindings : card" line per mapping.
    std::string dump() const;

    friend bool operator==(const SolutionMultiset& a, const SolutionMultiset& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const SolutionMultiset& a, const SolutionMultiset& b) { return !(a == b); }

private:
    std::map<SolutionMapping, std::uint64_t> entries_;
};

/// Pairwise merges of compatible mappings; cardinalities multiply and sum
/// over all contributing pairs.
SolutionMultiset join(const SolutionMultiset& m1, const SolutionMultiset& m2);

/// Additive union: cardinalities add on the intersection.
SolutionMultiset multiset_union(const SolutionMultiset& m1, const SolutionMultiset& m2);

/// Mappings of m1 incompatible with every mapping of m2, cardinalities
/// kept.
SolutionMultiset multiset_difference(const SolutionMultiset& m1, const SolutionMultiset& m2);

/// (m1 join m2) union (m1 difference m2).
SolutionMultiset left_outer_join(const SolutionMultiset& m1, const SolutionMultiset& m2);

/// Keeps mappings satisfying the condition, cardinalities kept.
SolutionMultiset selection(const SolutionMultiset& m, const FilterCondition& condition);

/// Restricts every mapping's domain to vars; cardinalities of collapsing
/// mappings add up.
SolutionMultiset project(const SolutionMultiset& m, const std::set<Variable>& vars);

class AlgebraExpression;
using ExprPtr = std::shared_ptr<const AlgebraExpression>;

/// Algebra expressions over solution multisets: basic graph patterns of
/// triple* patterns, the TR binder for embedded patterns, join, union,
/// optional, filter, and variable assignment for plain BIND clauses.
class AlgebraExpression {
public:
    enum class Kind { Bgp, Tr, And, Union, Opt, Filter, Assign };

    /// Patterns are deduplicated (a BGP is a set).
    static ExprPtr bgp(std::vector<TriplePatternStar> patterns);

    /// Binds the instantiation of tp to v. Throws std::invalid_argument if
    /// v occurs in tp or tp mentions a blank node.
    static ExprPtr tr(TriplePatternStar tp, Variable v);

    static ExprPtr conjunction(ExprPtr left, ExprPtr right);
    static ExprPtr set_union(ExprPtr left, ExprPtr right);
    static ExprPtr optional(ExprPtr left, ExprPtr right);
    static ExprPtr filter(ExprPtr input, FilterPtr condition);

    /// Extends each mapping with v bound to a constant or to another
    /// variable's value (v stays unbound when the source is unbound).
    static ExprPtr assign_constant(ExprPtr input, Variable v, StarTerm value);
    static ExprPtr assign_variable(ExprPtr input, Variable v, Variable source);

    Kind kind() const { return kind_; }
    const std::vector<TriplePatternStar>& patterns() const { return patterns_; }
    const TriplePatternStar& tr_pattern() const { return *tr_pattern_; }
    const Variable& variable() const { return vars_[0]; }
    const Variable& source_variable() const { return vars_[1]; }
    bool assigns_constant() const { return constant_.has_value(); }
    const StarTerm& constant() const { return *constant_; }
    const ExprPtr& left() const { return left_; }
    const ExprPtr& right() const { return right_; }
    const FilterPtr& condition() const { return condition_; }

    /// Variables that can appear in solutions of this expression.
    std::set<Variable> in_scope_variables() const;

private:
    explicit AlgebraExpression(Kind k) : kind_(k) {}
    static ExprPtr binary(Kind kind, ExprPtr left, ExprPtr right);

    Kind kind_;
    std::vector<TriplePatternStar> patterns_;
    std::shared_ptr<const TriplePatternStar> tr_pattern_;
    std::vector<Variable> vars_;
    std::optional<StarTerm> constant_;
    ExprPtr left_;
    ExprPtr right_;
    FilterPtr condition_;
};

/// Evaluates algebra expressions over one frozen graph. Construction
/// indexes the asserted and embedded triples together; evaluation is
/// read-only and may run concurrently with other evaluators.
class Evaluator {
public:
    /// Throws std::logic_error if g is not frozen.
    explicit Evaluator(const StarGraph& g);

    struct Binding; // matcher state, defined in the implementation

    SolutionMultiset evaluate(const AlgebraExpression& expr) const;

    /// BGP* matching: solutions are mappings with domain exactly the
    /// pattern variables; cardinality counts the distinct blank-node
    /// witness mappings.
    SolutionMultiset eval_bgp(const std::vector<TriplePatternStar>& patterns) const;

    /// TR: extends every match of {tp} with v bound to the instantiated
    /// triple.
    SolutionMultiset eval_tr(const TriplePatternStar& tp, const Variable& v) const;

    /// Triples the engine matches against: asserted and embedded together.
    std::size_t candidate_count() const { return candidates_.size(); }
    bool candidate_asserted(std::size_t i) const { return asserted_[i]; }
    const StarTriple& candidate(std::size_t i) const { return candidates_[i]; }

private:
    std::vector<std::uint32_t> lookup(const TriplePatternStar& tp, const Binding& binding) const;
    void match(const std::vector<TriplePatternStar>& patterns, std::vector<bool>& done,
               std::size_t remaining, Binding& binding,
               std::map<SolutionMapping, std::set<std::vector<StarTerm>>>& out,
               const std::vector<BlankNode>& bnode_order) const;

    const StarGraph* graph_;
    std::vector<StarTriple> candidates_;
    std::vector<bool> asserted_;
    std::multimap<StarTerm, std::uint32_t> by_subject_;
    std::multimap<StarTerm, std::uint32_t> by_predicate_;
    std::multimap<StarTerm, std::uint32_t> by_object_;
    std::map<StarTriple, std::uint32_t> by_value_;
};

/// One-shot convenience over a throwaway Evaluator.
SolutionMultiset evaluate(const AlgebraExpression& expr, const StarGraph& g);

} // namespace rdfstar

#endif
