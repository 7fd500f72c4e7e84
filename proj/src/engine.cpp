#include <algorithm>

#include "rdfstar/algebra.hpp"
#include "rdfstar/turtle.hpp"

namespace rdfstar {

void SolutionMultiset::add(SolutionMapping eta, std::uint64_t count) {
    if (count == 0) return;
    entries_[std::move(eta)] += count;
}

std::uint64_t SolutionMultiset::card(const SolutionMapping& eta) const {
    auto it = entries_.find(eta);
    return it == entries_.end() ? 0 : it->second;
}

std::uint64_t SolutionMultiset::total_size() const {
    std::uint64_t total = 0;
    for (const auto& [eta, count] : entries_) total += count;
    return total;
}

std::string SolutionMultiset::dump() const {
    std::string out;
    for (const auto& [eta, count] : entries_) {
        out += "{";
        bool first = true;
        for (const auto& [var, value] : eta.bindings()) {
            if (!first) out += ", ";
            first = false;
            out += "?" + var.name() + "=" + term_to_turtle(value);
        }
        out += "} : " + std::to_string(count) + "\n";
    }
    return out;
}

SolutionMultiset join(const SolutionMultiset& m1, const SolutionMultiset& m2) {
    SolutionMultiset out;
    for (const auto& [eta1, c1] : m1.entries()) {
        for (const auto& [eta2, c2] : m2.entries()) {
            if (!compatible(eta1, eta2)) continue;
            out.add(merge(eta1, eta2), c1 * c2);
        }
    }
    return out;
}

SolutionMultiset multiset_union(const SolutionMultiset& m1, const SolutionMultiset& m2) {
    SolutionMultiset out;
    for (const auto& [eta, c] : m1.entries()) out.add(eta, c);
    for (const auto& [eta, c] : m2.entries()) out.add(eta, c);
    return out;
}

SolutionMultiset multiset_difference(const SolutionMultiset& m1, const SolutionMultiset& m2) {
    SolutionMultiset out;
    for (const auto& [eta1, c1] : m1.entries()) {
        bool excluded = false;
        for (const auto& [eta2, c2] : m2.entries()) {
            if (compatible(eta1, eta2)) {
                excluded = true;
                break;
            }
        }
        if (!excluded) out.add(eta1, c1);
    }
    return out;
}

SolutionMultiset left_outer_join(const SolutionMultiset& m1, const SolutionMultiset& m2) {
    return multiset_union(join(m1, m2), multiset_difference(m1, m2));
}

SolutionMultiset selection(const SolutionMultiset& m, const FilterCondition& condition) {
    SolutionMultiset out;
    for (const auto& [eta, c] : m.entries())
        if (condition.satisfied_by(eta)) out.add(eta, c);
    return out;
}

SolutionMultiset project(const SolutionMultiset& m, const std::set<Variable>& vars) {
    SolutionMultiset out;
    for (const auto& [eta, c] : m.entries()) {
        SolutionMapping restricted;
        for (const auto& [var, value] : eta.bindings())
            if (vars.count(var) != 0) restricted.bind(var, value);
        out.add(std::move(restricted), c);
    }
    return out;
}

// --- algebra expressions ---

ExprPtr AlgebraExpression::bgp(std::vector<TriplePatternStar> patterns) {
    auto e = std::shared_ptr<AlgebraExpression>(new AlgebraExpression(Kind::Bgp));
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    e->patterns_ = std::move(patterns);
    return e;
}

ExprPtr AlgebraExpression::tr(TriplePatternStar tp, Variable v) {
    if (pattern_variables(tp).count(v) != 0)
        throw std::invalid_argument("TR variable ?" + v.name() + " occurs in its own pattern");
    if (!pattern_bnodes(tp).empty())
        throw std::invalid_argument("TR patterns must be free of blank nodes");
    auto e = std::shared_ptr<AlgebraExpression>(new AlgebraExpression(Kind::Tr));
    e->tr_pattern_ = std::make_shared<const TriplePatternStar>(std::move(tp));
    e->vars_.push_back(std::move(v));
    return e;
}

ExprPtr AlgebraExpression::binary(Kind kind, ExprPtr left, ExprPtr right) {
    if (!left || !right) throw std::invalid_argument("null algebra expression");
    auto e = std::shared_ptr<AlgebraExpression>(new AlgebraExpression(kind));
    e->left_ = std::move(left);
    e->right_ = std::move(right);
    return e;
}

ExprPtr AlgebraExpression::conjunction(ExprPtr left, ExprPtr right) {
    return binary(Kind::And, std::move(left), std::move(right));
}
ExprPtr AlgebraExpression::set_union(ExprPtr left, ExprPtr right) {
    return binary(Kind::Union, std::move(left), std::move(right));
}
ExprPtr AlgebraExpression::optional(ExprPtr left, ExprPtr right) {
    return binary(Kind::Opt, std::move(left), std::move(right));
}

ExprPtr AlgebraExpression::filter(ExprPtr input, FilterPtr condition) {
    if (!input || !condition) throw std::invalid_argument("null algebra expression");
    auto e = std::shared_ptr<AlgebraExpression>(new AlgebraExpression(Kind::Filter));
    e->left_ = std::move(input);
    e->condition_ = std::move(condition);
    return e;
}

ExprPtr AlgebraExpression::assign_constant(ExprPtr input, Variable v, StarTerm value) {
    if (!input) throw std::invalid_argument("null algebra expression");
    auto e = std::shared_ptr<AlgebraExpression>(new AlgebraExpression(Kind::Assign));
    e->left_ = std::move(input);
    e->vars_.push_back(std::move(v));
    e->constant_ = std::move(value);
    return e;
}

ExprPtr AlgebraExpression::assign_variable(ExprPtr input, Variable v, Variable source) {
    if (!input) throw std::invalid_argument("null algebra expression");
    auto e = std::shared_ptr<AlgebraExpression>(new AlgebraExpression(Kind::Assign));
    e->left_ = std::move(input);
    e->vars_.push_back(std::move(v));
    e->vars_.push_back(std::move(source));
    return e;
}

std::set<Variable> AlgebraExpression::in_scope_variables() const {
    std::set<Variable> out;
    switch (kind_) {
        case Kind::Bgp:
            for (const auto& tp : patterns_) {
                auto vs = pattern_variables(tp);
                out.insert(vs.begin(), vs.end());
            }
            break;
        case Kind::Tr: {
            out = pattern_variables(*tr_pattern_);
            out.insert(vars_[0]);
            break;
        }
        case Kind::Filter: out = left_->in_scope_variables(); break;
        case Kind::Assign:
            out = left_->in_scope_variables();
            out.insert(vars_[0]);
            break;
        default: {
            out = left_->in_scope_variables();
            auto rhs = right_->in_scope_variables();
            out.insert(rhs.begin(), rhs.end());
        }
    }
    return out;
}

// --- evaluation ---

Evaluator::Evaluator(const StarGraph& g) : graph_(&g) {
    if (!g.frozen()) throw std::logic_error("evaluation requires a frozen graph");
    // One candidate pool over asserted and embedded triples; patterns match
    // against their union.
    for (const StarTriple& t : g.triples()) {
        candidates_.push_back(t);
        asserted_.push_back(true);
    }
    for (const StarTriple& t : g.embedded()) {
        if (!g.contains(t)) {
            candidates_.push_back(t);
            asserted_.push_back(false);
        }
    }
    for (std::uint32_t i = 0; i < candidates_.size(); ++i) {
        const StarTriple& t = candidates_[i];
        by_subject_.emplace(t.subject(), i);
        by_predicate_.emplace(StarTerm(t.predicate()), i);
        by_object_.emplace(t.object(), i);
        by_value_.emplace(t, i);
    }
}

struct Evaluator::Binding {
    std::map<Variable, StarTerm> vars;
    std::map<BlankNode, StarTerm> bnodes;

    // Undo log so backtracking can unwind partial unifications.
    std::vector<std::variant<Variable, BlankNode>> trail;

    void push_var(const Variable& v, const StarTerm& value) {
        vars.emplace(v, value);
        trail.emplace_back(v);
    }
    void push_bnode(const BlankNode& b, const StarTerm& value) {
        bnodes.emplace(b, value);
        trail.emplace_back(b);
    }
    std::size_t mark() const { return trail.size(); }
    void rewind(std::size_t mark) {
        while (trail.size() > mark) {
            if (std::holds_alternative<Variable>(trail.back()))
                vars.erase(std::get<Variable>(trail.back()));
            else
                bnodes.erase(std::get<BlankNode>(trail.back()));
            trail.pop_back();
        }
    }
};

namespace {

/// Fully resolves a pattern position under the current binding; nullopt if
/// an unbound variable or blank node remains (or the position cannot form
/// a term, e.g. a literal-subject instantiation).
std::optional<StarTerm> resolve(const PatternTerm& t, const Evaluator::Binding& binding);

std::optional<StarTerm> resolve_pattern(const TriplePatternStar& p,
                                        const Evaluator::Binding& binding) {
    auto s = resolve(p.subject(), binding);
    auto pr = resolve(p.predicate(), binding);
    auto o = resolve(p.object(), binding);
    if (!s || !pr || !o) return std::nullopt;
    if (!pr->is_iri() || s->is_literal()) return std::nullopt;
    try {
        return StarTerm(StarTriple(std::move(*s), pr->iri(), std::move(*o)));
    } catch (const NestingDepthError&) {
        return std::nullopt; // deeper than anything the graph can hold
    }
}

std::optional<StarTerm> resolve(const PatternTerm& t, const Evaluator::Binding& binding) {
    if (t.is_variable()) {
        auto it = binding.vars.find(t.variable());
        if (it == binding.vars.end()) return std::nullopt;
        return it->second;
    }
    if (t.is_bnode()) {
        auto it = binding.bnodes.find(t.bnode());
        if (it == binding.bnodes.end()) return std::nullopt;
        return it->second;
    }
    if (t.is_pattern()) return resolve_pattern(t.pattern(), binding);
    return t.as_term();
}

bool unify(const PatternTerm& pattern, const StarTerm& value, Evaluator::Binding& binding) {
    if (pattern.is_variable()) {
        auto it = binding.vars.find(pattern.variable());
        if (it != binding.vars.end()) return it->second == value;
        binding.push_var(pattern.variable(), value);
        return true;
    }
    if (pattern.is_bnode()) {
        auto it = binding.bnodes.find(pattern.bnode());
        if (it != binding.bnodes.end()) return it->second == value;
        binding.push_bnode(pattern.bnode(), value);
        return true;
    }
    if (pattern.is_pattern()) {
        if (!value.is_triple()) return false;
        const TriplePatternStar& p = pattern.pattern();
        const StarTriple& t = value.triple();
        return unify(p.subject(), t.subject(), binding) &&
               unify(p.predicate(), StarTerm(t.predicate()), binding) &&
               unify(p.object(), t.object(), binding);
    }
    return pattern.as_term() == value;
}

/// How many of the three positions are fully resolved; used to pick the
/// most selective pattern next.
int ground_score(const TriplePatternStar& tp, const Evaluator::Binding& binding) {
    int score = 0;
    for (const PatternTerm* pos : {&tp.subject(), &tp.predicate(), &tp.object()})
        if (resolve(*pos, binding)) ++score;
    return score;
}

} // namespace

std::vector<std::uint32_t> Evaluator::lookup(const TriplePatternStar& tp,
                                             const Binding& binding) const {
    // Most selective single-position probe: exact value, then subject,
    // object, predicate; otherwise scan everything.
    if (auto s = resolve(tp.subject(), binding)) {
        if (auto p = resolve(tp.predicate(), binding)) {
            if (auto o = resolve(tp.object(), binding)) {
                if (s->is_literal() || !p->is_iri()) return {};
                auto it = by_value_.find(StarTriple(*s, p->iri(), *o));
                if (it == by_value_.end()) return {};
                return {it->second};
            }
        }
        auto [lo, hi] = by_subject_.equal_range(*s);
        std::vector<std::uint32_t> out;
        for (auto it = lo; it != hi; ++it) out.push_back(it->second);
        return out;
    }
    if (auto o = resolve(tp.object(), binding)) {
        auto [lo, hi] = by_object_.equal_range(*o);
        std::vector<std::uint32_t> out;
        for (auto it = lo; it != hi; ++it) out.push_back(it->second);
        return out;
    }
    if (auto p = resolve(tp.predicate(), binding)) {
        auto [lo, hi] = by_predicate_.equal_range(*p);
        std::vector<std::uint32_t> out;
        for (auto it = lo; it != hi; ++it) out.push_back(it->second);
        return out;
    }
    std::vector<std::uint32_t> out(candidates_.size());
    for (std::uint32_t i = 0; i < candidates_.size(); ++i) out[i] = i;
    return out;
}

void Evaluator::match(const std::vector<TriplePatternStar>& patterns, std::vector<bool>& done,
                      std::size_t remaining, Binding& binding,
                      std::map<SolutionMapping, std::set<std::vector<StarTerm>>>& out,
                      const std::vector<BlankNode>& bnode_order) const {
    if (remaining == 0) {
        SolutionMapping eta;
        for (const auto& [var, value] : binding.vars) eta.bind(var, value);
        std::vector<StarTerm> rho;
        rho.reserve(bnode_order.size());
        for (const BlankNode& b : bnode_order) rho.push_back(binding.bnodes.at(b));
        out[std::move(eta)].insert(std::move(rho));
        return;
    }
    // Pick the pattern with the most resolved positions under the current
    // binding; any order yields the same multiset.
    std::size_t best = patterns.size();
    int best_score = -1;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (done[i]) continue;
        int score = ground_score(patterns[i], binding);
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    done[best] = true;
    for (std::uint32_t idx : lookup(patterns[best], binding)) {
        std::size_t mark = binding.mark();
        const StarTriple& t = candidates_[idx];
        if (unify(patterns[best].subject(), t.subject(), binding) &&
            unify(patterns[best].predicate(), StarTerm(t.predicate()), binding) &&
            unify(patterns[best].object(), t.object(), binding)) {
            match(patterns, done, remaining - 1, binding, out, bnode_order);
        }
        binding.rewind(mark);
    }
    done[best] = false;
}

SolutionMultiset Evaluator::eval_bgp(const std::vector<TriplePatternStar>& raw) const {
    // A BGP is a set of patterns.
    std::vector<TriplePatternStar> patterns = raw;
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());

    std::set<BlankNode> bnode_set;
    for (const auto& tp : patterns) {
        auto bs = pattern_bnodes(tp);
        bnode_set.insert(bs.begin(), bs.end());
    }
    std::vector<BlankNode> bnode_order(bnode_set.begin(), bnode_set.end());

    std::map<SolutionMapping, std::set<std::vector<StarTerm>>> matches;
    if (patterns.empty()) {
        matches[SolutionMapping{}].insert(std::vector<StarTerm>{});
    } else {
        Binding binding;
        std::vector<bool> done(patterns.size(), false);
        match(patterns, done, patterns.size(), binding, matches, bnode_order);
    }

    // Solutions project away the blank-node witnesses; the number of
    // distinct witnesses is the cardinality.
    SolutionMultiset out;
    for (auto& [eta, witnesses] : matches) out.add(eta, witnesses.size());
    return out;
}

SolutionMultiset Evaluator::eval_tr(const TriplePatternStar& tp, const Variable& v) const {
    if (pattern_variables(tp).count(v) != 0)
        throw std::invalid_argument("TR variable ?" + v.name() + " occurs in its own pattern");
    if (!pattern_bnodes(tp).empty())
        throw std::invalid_argument("TR patterns must be free of blank nodes");
    SolutionMultiset base = eval_bgp({tp});
    SolutionMultiset out;
    for (const auto& [eta, c] : base.entries()) {
        auto ground = pattern_to_triple(apply(eta, tp));
        if (!ground) continue; // unreachable: eta binds every variable of tp
        SolutionMapping extended = eta;
        extended.bind(v, StarTerm(std::move(*ground)));
        out.add(std::move(extended), c);
    }
    return out;
}

SolutionMultiset Evaluator::evaluate(const AlgebraExpression& expr) const {
    using Kind = AlgebraExpression::Kind;
    switch (expr.kind()) {
        case Kind::Bgp: return eval_bgp(expr.patterns());
        case Kind::Tr: return eval_tr(expr.tr_pattern(), expr.variable());
        case Kind::And: return join(evaluate(*expr.left()), evaluate(*expr.right()));
        case Kind::Union:
            return multiset_union(evaluate(*expr.left()), evaluate(*expr.right()));
        case Kind::Opt:
            return left_outer_join(evaluate(*expr.left()), evaluate(*expr.right()));
        case Kind::Filter: return selection(evaluate(*expr.left()), *expr.condition());
        case Kind::Assign: {
            SolutionMultiset input = evaluate(*expr.left());
            SolutionMultiset out;
            for (const auto& [eta, c] : input.entries()) {
                if (eta.bound(expr.variable()))
                    throw std::logic_error("assignment target ?" + expr.variable().name() +
                                           " is already bound");
                SolutionMapping extended = eta;
                if (expr.assigns_constant()) {
                    extended.bind(expr.variable(), expr.constant());
                } else if (eta.bound(expr.source_variable())) {
                    extended.bind(expr.variable(), eta.at(expr.source_variable()));
                }
                out.add(std::move(extended), c);
            }
            return out;
        }
    }
    throw std::logic_error("unreachable algebra kind");
}

SolutionMultiset evaluate(const AlgebraExpression& expr, const StarGraph& g) {
    return Evaluator(g).evaluate(expr);
}

} // namespace rdfstar
