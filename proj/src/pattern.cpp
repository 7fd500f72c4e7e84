#include "rdfstar/pattern.hpp"

#include <stdexcept>

#include "char_classes.hpp"

namespace rdfstar {

Variable::Variable(std::string name) : name_(std::move(name)) {
    if (!chars::is_valid_varname(name_))
        throw std::invalid_argument("invalid variable name: " + name_);
}

namespace {

bool pattern_has_bnode(const TriplePatternStar& p);

bool term_has_bnode(const PatternTerm& t) {
    if (t.is_bnode()) return true;
    if (t.is_pattern()) return pattern_has_bnode(t.pattern());
    return false;
}

bool pattern_has_bnode(const TriplePatternStar& p) {
    return term_has_bnode(p.subject()) || term_has_bnode(p.object());
}

bool pattern_has_variable(const TriplePatternStar& p);

bool term_has_variable(const PatternTerm& t) {
    if (t.is_variable()) return true;
    if (t.is_pattern()) return pattern_has_variable(t.pattern());
    return false;
}

bool pattern_has_variable(const TriplePatternStar& p) {
    return term_has_variable(p.subject()) || term_has_variable(p.predicate()) ||
           term_has_variable(p.object());
}

} // namespace

PatternTerm::PatternTerm(Variable v) : value_(std::move(v)) {}
PatternTerm::PatternTerm(Iri iri) : value_(std::move(iri)) {}
PatternTerm::PatternTerm(BlankNode bnode) : value_(std::move(bnode)) {}
PatternTerm::PatternTerm(Literal literal) : value_(std::move(literal)) {}

PatternTerm::PatternTerm(StarTerm term)
    : value_([&]() -> std::variant<Variable, Iri, BlankNode, Literal, TriplePtr, PatternPtr> {
          if (term.is_iri()) return term.iri();
          if (term.is_bnode()) return term.bnode();
          if (term.is_literal()) return term.literal();
          return term.triple_ptr();
      }()) {}

PatternTerm PatternTerm::embedded(TriplePatternStar pattern) {
    if (pattern_has_bnode(pattern))
        throw std::invalid_argument("embedded triple patterns must be free of blank nodes");
    if (!pattern_has_variable(pattern)) {
        // fully ground: normalize to the triple value it denotes
        if (auto t = pattern_to_triple(pattern))
            return PatternTerm(Raw{}, std::make_shared<const StarTriple>(std::move(*t)));
    }
    return PatternTerm(Raw{}, std::make_shared<const TriplePatternStar>(std::move(pattern)));
}

StarTerm PatternTerm::as_term() const {
    if (is_iri()) return StarTerm(iri());
    if (is_bnode()) return StarTerm(bnode());
    if (is_literal()) return StarTerm(literal());
    if (is_triple()) return StarTerm(std::get<TriplePtr>(value_));
    throw std::logic_error("pattern position is not a ground term");
}

bool operator==(const PatternTerm& a, const PatternTerm& b) { return compare(a, b) == 0; }
bool operator<(const PatternTerm& a, const PatternTerm& b) { return compare(a, b) < 0; }

TriplePatternStar::TriplePatternStar(PatternTerm subject, PatternTerm predicate,
                                     PatternTerm object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
    if (!predicate_.is_variable() && !predicate_.is_iri())
        throw std::invalid_argument("pattern predicate must be a variable or an IRI");
    std::size_t d = 0;
    for (const PatternTerm* pos : {&subject_, &object_}) {
        if (pos->is_pattern()) d = std::max(d, pos->pattern().depth() + 1);
        if (pos->is_triple()) d = std::max(d, pos->triple().depth() + 1);
    }
    depth_ = d;
    if (depth_ > max_nesting_depth()) throw NestingDepthError(depth_, max_nesting_depth());
}

bool operator==(const TriplePatternStar& a, const TriplePatternStar& b) {
    return compare(a, b) == 0;
}
bool operator<(const TriplePatternStar& a, const TriplePatternStar& b) {
    return compare(a, b) < 0;
}

namespace {
int pattern_rank(const PatternTerm& t) {
    if (t.is_variable()) return 0;
    if (t.is_pattern()) return 1;
    return 2; // ground terms, ordered by term comparison
}
} // namespace

int compare(const PatternTerm& a, const PatternTerm& b) {
    int ra = pattern_rank(a), rb = pattern_rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (ra) {
        case 0: {
            const std::string& na = a.variable().name();
            const std::string& nb = b.variable().name();
            return na < nb ? -1 : (nb < na ? 1 : 0);
        }
        case 1: return compare(a.pattern(), b.pattern());
        default: return compare(a.as_term(), b.as_term());
    }
}

int compare(const TriplePatternStar& a, const TriplePatternStar& b) {
    if (int c = compare(a.subject(), b.subject())) return c;
    if (int c = compare(a.predicate(), b.predicate())) return c;
    return compare(a.object(), b.object());
}

namespace {
void collect_variables(const PatternTerm& t, std::set<Variable>& out) {
    if (t.is_variable()) {
        out.insert(t.variable());
    } else if (t.is_pattern()) {
        collect_variables(t.pattern().subject(), out);
        collect_variables(t.pattern().predicate(), out);
        collect_variables(t.pattern().object(), out);
    }
}

void collect_bnodes(const PatternTerm& t, std::set<BlankNode>& out) {
    if (t.is_bnode()) {
        out.insert(t.bnode());
    } else if (t.is_pattern()) {
        collect_bnodes(t.pattern().subject(), out);
        collect_bnodes(t.pattern().object(), out);
    }
}
} // namespace

std::set<Variable> pattern_variables(const TriplePatternStar& tp) {
    std::set<Variable> out;
    collect_variables(tp.subject(), out);
    collect_variables(tp.predicate(), out);
    collect_variables(tp.object(), out);
    return out;
}

std::set<BlankNode> pattern_bnodes(const TriplePatternStar& tp) {
    std::set<BlankNode> out;
    collect_bnodes(tp.subject(), out);
    collect_bnodes(tp.object(), out);
    return out;
}

std::optional<StarTriple> pattern_to_triple(const TriplePatternStar& tp) {
    const auto position = [](const PatternTerm& t) -> std::optional<StarTerm> {
        if (t.is_variable()) return std::nullopt;
        if (t.is_pattern()) {
            auto inner = pattern_to_triple(t.pattern());
            if (!inner) return std::nullopt;
            return StarTerm(std::move(*inner));
        }
        return t.as_term();
    };
    auto s = position(tp.subject());
    auto p = position(tp.predicate());
    auto o = position(tp.object());
    if (!s || !p || !o) return std::nullopt;
    if (s->is_literal()) return std::nullopt;
    return StarTriple(std::move(*s), p->iri(), std::move(*o));
}

TriplePatternStar pattern_from_triple(const StarTriple& t) {
    return TriplePatternStar(PatternTerm(t.subject()), PatternTerm(t.predicate()),
                             PatternTerm(t.object()));
}

const StarTerm& SolutionMapping::at(const Variable& v) const {
    auto it = bindings_.find(v);
    if (it == bindings_.end()) throw std::out_of_range("unbound variable ?" + v.name());
    return it->second;
}

void SolutionMapping::bind(Variable v, StarTerm value) {
    auto [it, added] = bindings_.emplace(std::move(v), std::move(value));
    if (!added) throw std::logic_error("variable ?" + it->first.name() + " is already bound");
}

bool operator<(const SolutionMapping& a, const SolutionMapping& b) {
    auto ia = a.bindings_.begin(), ib = b.bindings_.begin();
    for (; ia != a.bindings_.end() && ib != b.bindings_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (int c = compare(ia->second, ib->second)) return c < 0;
    }
    return ia == a.bindings_.end() && ib != b.bindings_.end();
}

bool compatible(const SolutionMapping& a, const SolutionMapping& b) {
    const SolutionMapping& small = a.size() <= b.size() ? a : b;
    const SolutionMapping& large = a.size() <= b.size() ? b : a;
    for (const auto& [var, value] : small.bindings()) {
        auto it = large.bindings().find(var);
        if (it != large.bindings().end() && !(it->second == value)) return false;
    }
    return true;
}

SolutionMapping merge(const SolutionMapping& a, const SolutionMapping& b) {
    if (!compatible(a, b)) throw std::invalid_argument("cannot merge incompatible mappings");
    SolutionMapping out = a;
    for (const auto& [var, value] : b.bindings())
        if (!out.bound(var)) out.bind(var, value);
    return out;
}

namespace {
PatternTerm apply_term(const SolutionMapping& eta, const PatternTerm& t) {
    if (t.is_variable()) {
        if (eta.bound(t.variable())) return PatternTerm(eta.at(t.variable()));
        return t;
    }
    if (t.is_pattern()) {
        TriplePatternStar substituted = apply(eta, t.pattern());
        // Substituted values may carry blank nodes, which are fine in a
        // ground triple but not in a residual pattern.
        if (auto ground = pattern_to_triple(substituted))
            return PatternTerm(StarTerm(std::move(*ground)));
        return PatternTerm::embedded(std::move(substituted));
    }
    return t;
}
} // namespace

TriplePatternStar apply(const SolutionMapping& eta, const TriplePatternStar& tp) {
    return TriplePatternStar(apply_term(eta, tp.subject()), apply_term(eta, tp.predicate()),
                             apply_term(eta, tp.object()));
}

FilterPtr FilterCondition::bound(Variable v) {
    auto c = std::shared_ptr<FilterCondition>(new FilterCondition(Kind::Bound));
    c->vars_.push_back(std::move(v));
    return c;
}

FilterPtr FilterCondition::equals_const(Variable v, StarTerm constant) {
    if (!constant.is_iri() && !constant.is_literal())
        throw std::invalid_argument("equality constants must be IRIs or literals");
    auto c = std::shared_ptr<FilterCondition>(new FilterCondition(Kind::EqualsConst));
    c->vars_.push_back(std::move(v));
    c->constant_ = std::move(constant);
    return c;
}

FilterPtr FilterCondition::equals_vars(Variable x, Variable y) {
    auto c = std::shared_ptr<FilterCondition>(new FilterCondition(Kind::EqualsVars));
    c->vars_.push_back(std::move(x));
    c->vars_.push_back(std::move(y));
    return c;
}

FilterPtr FilterCondition::negation(FilterPtr inner) {
    if (!inner) throw std::invalid_argument("null filter condition");
    auto c = std::shared_ptr<FilterCondition>(new FilterCondition(Kind::Not));
    c->left_ = std::move(inner);
    return c;
}

FilterPtr FilterCondition::disjunction(FilterPtr left, FilterPtr right) {
    if (!left || !right) throw std::invalid_argument("null filter condition");
    auto c = std::shared_ptr<FilterCondition>(new FilterCondition(Kind::Or));
    c->left_ = std::move(left);
    c->right_ = std::move(right);
    return c;
}

FilterPtr FilterCondition::conjunction(FilterPtr left, FilterPtr right) {
    if (!left || !right) throw std::invalid_argument("null filter condition");
    auto c = std::shared_ptr<FilterCondition>(new FilterCondition(Kind::And));
    c->left_ = std::move(left);
    c->right_ = std::move(right);
    return c;
}

bool FilterCondition::satisfied_by(const SolutionMapping& eta) const {
    switch (kind_) {
        case Kind::Bound: return eta.bound(vars_[0]);
        case Kind::EqualsConst: return eta.bound(vars_[0]) && eta.at(vars_[0]) == *constant_;
        case Kind::EqualsVars:
            return eta.bound(vars_[0]) && eta.bound(vars_[1]) &&
                   eta.at(vars_[0]) == eta.at(vars_[1]);
        case Kind::Not: return !left_->satisfied_by(eta);
        case Kind::Or: return left_->satisfied_by(eta) || right_->satisfied_by(eta);
        case Kind::And: return left_->satisfied_by(eta) && right_->satisfied_by(eta);
    }
    return false;
}

} // namespace rdfstar
