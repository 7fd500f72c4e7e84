#include <algorithm>

#include "iri_resolve.hpp"
#include "rdfstar/query.hpp"
#include "rdfstar/vocab.hpp"

namespace rdfstar::query {

namespace {

// --- variable collection (embedded patterns count at any depth) ---

void node_variables(const AstNode& node, std::vector<Variable>& out) {
    if (std::holds_alternative<Variable>(node.value)) {
        const Variable& v = std::get<Variable>(node.value);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    } else if (std::holds_alternative<AstEmbedded>(node.value)) {
        const AstEmbedded& emb = std::get<AstEmbedded>(node.value);
        node_variables(*emb.subject, out);
        node_variables(*emb.predicate, out);
        node_variables(*emb.object, out);
    }
}

void statement_variables(const AstStatement& st, std::vector<Variable>& out) {
    node_variables(*st.subject, out);
    for (const auto& vo : st.properties) {
        node_variables(*vo.verb, out);
        for (const auto& obj : vo.objects) node_variables(*obj, out);
    }
}

void group_in_scope(const GroupPattern& group, std::vector<Variable>& out);

void element_in_scope(const GroupElement& element, std::vector<Variable>& out) {
    if (const auto* block = std::get_if<TriplesBlock>(&element)) {
        for (const auto& st : block->statements) statement_variables(st, out);
    } else if (const auto* bind = std::get_if<BindClause>(&element)) {
        if (bind->is_embedded()) node_variables(*std::get<AstNodePtr>(bind->value), out);
        if (std::find(out.begin(), out.end(), bind->target) == out.end())
            out.push_back(bind->target);
    } else if (const auto* opt = std::get_if<OptionalClause>(&element)) {
        group_in_scope(*opt->group, out);
    } else if (const auto* uni = std::get_if<UnionClause>(&element)) {
        for (const auto& branch : uni->branches) group_in_scope(*branch, out);
    } else if (const auto* nested = std::get_if<NestedGroup>(&element)) {
        group_in_scope(*nested->group, out);
    }
    // FILTER binds nothing.
}

void group_in_scope(const GroupPattern& group, std::vector<Variable>& out) {
    for (const auto& element : group.elements) element_in_scope(element, out);
}

void check_group(const GroupPattern& group, std::vector<ScopeViolation>& violations) {
    std::vector<Variable> preceding;
    for (const auto& element : group.elements) {
        if (const auto* bind = std::get_if<BindClause>(&element)) {
            if (std::find(preceding.begin(), preceding.end(), bind->target) != preceding.end()) {
                violations.push_back(
                    {bind->target, bind->position,
                     "BIND target ?" + bind->target.name() +
                         " is already in scope from the preceding group elements"});
            }
            if (bind->is_embedded()) {
                std::vector<Variable> inner;
                node_variables(*std::get<AstNodePtr>(bind->value), inner);
                if (std::find(inner.begin(), inner.end(), bind->target) != inner.end()) {
                    violations.push_back({bind->target, bind->position,
                                          "BIND target ?" + bind->target.name() +
                                              " occurs inside its own embedded triple pattern"});
                }
            }
        } else if (const auto* opt = std::get_if<OptionalClause>(&element)) {
            check_group(*opt->group, violations);
        } else if (const auto* uni = std::get_if<UnionClause>(&element)) {
            for (const auto& branch : uni->branches) check_group(*branch, violations);
        } else if (const auto* nested = std::get_if<NestedGroup>(&element)) {
            check_group(*nested->group, violations);
        }
        element_in_scope(element, preceding);
    }
}

} // namespace

ScopeReport check_scope(const QueryAst& ast) {
    ScopeReport report;
    check_group(ast.where, report.violations);
    group_in_scope(ast.where, report.in_scope);
    return report;
}

// --- syntax expansion ---

namespace {

struct Expander {
    const std::map<std::string, Iri>& prefixes;
    const std::optional<Iri>& base;

    Iri resolve_ref(const AstIriRef& ref, SourcePosition pos) const {
        switch (ref.form) {
            case AstIriRef::Form::KeywordA: return vocab::rdf_type();
            case AstIriRef::Form::Absolute: return Iri(ref.value);
            case AstIriRef::Form::Relative:
                if (!base)
                    throw QueryError(Stage::Expand, pos,
                                     "relative IRI <" + ref.value + "> without a base");
                return Iri(resolve_iri(base->value(), ref.value));
            case AstIriRef::Form::Prefixed: {
                auto it = prefixes.find(ref.prefix);
                if (it == prefixes.end())
                    throw QueryError(Stage::Expand, pos, "unknown prefix '" + ref.prefix + ":'");
                return Iri(it->second.value() + ref.local);
            }
        }
        throw QueryError(Stage::Expand, pos, "unreachable IRI form");
    }

    AstIriRef expand_ref(const AstIriRef& ref, SourcePosition pos) const {
        return AstIriRef{AstIriRef::Form::Absolute, resolve_ref(ref, pos).value(), "", ""};
    }

    AstLiteral expand_literal(const AstLiteral& lit, SourcePosition pos) const {
        AstLiteral out = lit;
        if (out.datatype) out.datatype = expand_ref(*out.datatype, pos);
        return out;
    }

    AstNodePtr expand_node(const AstNodePtr& node) const {
        AstNode::Value value = node->value;
        if (const auto* ref = std::get_if<AstIriRef>(&node->value)) {
            value = expand_ref(*ref, node->position);
        } else if (const auto* lit = std::get_if<AstLiteral>(&node->value)) {
            value = expand_literal(*lit, node->position);
        } else if (const auto* emb = std::get_if<AstEmbedded>(&node->value)) {
            AstEmbedded e;
            e.subject = expand_node(emb->subject);
            e.predicate = expand_node(emb->predicate);
            e.object = expand_node(emb->object);
            value = std::move(e);
        }
        return std::make_shared<AstNode>(std::move(value), node->position);
    }

    TriplesBlock expand_block(const TriplesBlock& block) const {
        TriplesBlock out;
        // Flatten each predicate/object list into simple statements; an
        // embedded triple pattern participates like any other term.
        for (const AstStatement& st : block.statements) {
            AstNodePtr subject = expand_node(st.subject);
            for (const auto& vo : st.properties) {
                AstNodePtr verb = expand_node(vo.verb);
                for (const auto& object : vo.objects) {
                    AstStatement simple;
                    simple.subject = subject;
                    simple.properties.push_back({verb, {expand_node(object)}});
                    out.statements.push_back(std::move(simple));
                }
            }
        }
        return out;
    }

    GroupPattern expand_group(const GroupPattern& group) const {
        GroupPattern out;
        for (const GroupElement& element : group.elements) {
            if (const auto* block = std::get_if<TriplesBlock>(&element)) {
                out.elements.emplace_back(expand_block(*block));
            } else if (const auto* bind = std::get_if<BindClause>(&element)) {
                BindClause b = *bind;
                if (const auto* node = std::get_if<AstNodePtr>(&b.value)) {
                    b.value = expand_node(*node);
                } else if (const auto* lit = std::get_if<AstLiteral>(&b.value)) {
                    b.value = expand_literal(*lit, b.position);
                } else if (const auto* ref = std::get_if<AstIriRef>(&b.value)) {
                    b.value = expand_ref(*ref, b.position);
                }
                out.elements.emplace_back(std::move(b));
            } else if (const auto* filt = std::get_if<FilterClause>(&element)) {
                out.elements.emplace_back(FilterClause{expand_condition(filt->condition)});
            } else if (const auto* opt = std::get_if<OptionalClause>(&element)) {
                out.elements.emplace_back(
                    OptionalClause{std::make_shared<GroupPattern>(expand_group(*opt->group))});
            } else if (const auto* uni = std::get_if<UnionClause>(&element)) {
                UnionClause u;
                for (const auto& branch : uni->branches)
                    u.branches.push_back(std::make_shared<GroupPattern>(expand_group(*branch)));
                out.elements.emplace_back(std::move(u));
            } else if (const auto* nested = std::get_if<NestedGroup>(&element)) {
                out.elements.emplace_back(
                    NestedGroup{std::make_shared<GroupPattern>(expand_group(*nested->group))});
            }
        }
        return out;
    }

    AstConditionPtr expand_condition(const AstConditionPtr& cond) const {
        auto out = std::make_shared<AstCondition>(*cond);
        if (out->lhs) out->lhs = expand_node(*out->lhs);
        if (out->rhs) out->rhs = expand_node(*out->rhs);
        if (out->left) out->left = expand_condition(out->left);
        if (out->right) out->right = expand_condition(out->right);
        return out;
    }
};

} // namespace

QueryAst expand_syntax(const QueryAst& ast) {
    Expander expander{ast.prefixes, ast.base};
    QueryAst out;
    out.prefixes = ast.prefixes;
    out.base = ast.base;
    out.select_all = ast.select_all;
    out.select_vars = ast.select_vars;
    out.where = expander.expand_group(ast.where);
    return out;
}

// --- lift and translation ---

namespace {

StarTerm node_to_term(const AstNode& node) {
    if (const auto* ref = std::get_if<AstIriRef>(&node.value)) return StarTerm(Iri(ref->value));
    if (const auto* b = std::get_if<BlankNode>(&node.value)) return StarTerm(*b);
    const AstLiteral& lit = std::get<AstLiteral>(node.value);
    if (lit.language) return StarTerm(Literal::lang_tagged(lit.lexical, *lit.language));
    if (lit.datatype) {
        Iri dt(lit.datatype->value);
        if (dt == vocab::xsd_string()) return StarTerm(Literal::str(lit.lexical));
        return StarTerm(Literal::typed(lit.lexical, dt));
    }
    return StarTerm(Literal::str(lit.lexical));
}

TriplePatternStar lift_embedded(const AstEmbedded& emb);

} // namespace

PatternTerm lift(const AstNode& node) {
    if (const auto* emb = std::get_if<AstEmbedded>(&node.value))
        return PatternTerm::embedded(lift_embedded(*emb));
    if (const auto* var = std::get_if<Variable>(&node.value)) return PatternTerm(*var);
    return PatternTerm(node_to_term(node));
}

namespace {

TriplePatternStar lift_embedded(const AstEmbedded& emb) {
    return TriplePatternStar(lift(*emb.subject), lift(*emb.predicate), lift(*emb.object));
}

struct Translator {
    ExprPtr empty_bgp() const { return AlgebraExpression::bgp({}); }

    static bool is_empty_bgp(const ExprPtr& e) {
        return e->kind() == AlgebraExpression::Kind::Bgp && e->patterns().empty();
    }

    /// Join with the W3C simplification: the empty BGP is the identity.
    static ExprPtr joined(ExprPtr left, ExprPtr right) {
        if (is_empty_bgp(left)) return right;
        if (is_empty_bgp(right)) return left;
        return AlgebraExpression::conjunction(std::move(left), std::move(right));
    }

    static void statement_to_patterns(const AstStatement& st,
                                      std::vector<TriplePatternStar>& out) {
        PatternTerm subject = lift(*st.subject);
        for (const auto& vo : st.properties) {
            PatternTerm verb = lift(*vo.verb);
            for (const auto& object : vo.objects)
                out.emplace_back(subject, verb, lift(*object));
        }
    }

    FilterPtr condition_to_filter(const AstCondition& cond) const {
        switch (cond.kind) {
            case AstCondition::Kind::Bound:
                return FilterCondition::bound(std::get<Variable>((*cond.lhs)->value));
            case AstCondition::Kind::Equals: {
                const AstNode& lhs = **cond.lhs;
                const AstNode& rhs = **cond.rhs;
                const bool lvar = std::holds_alternative<Variable>(lhs.value);
                const bool rvar = std::holds_alternative<Variable>(rhs.value);
                if (lvar && rvar)
                    return FilterCondition::equals_vars(std::get<Variable>(lhs.value),
                                                        std::get<Variable>(rhs.value));
                if (lvar)
                    return FilterCondition::equals_const(std::get<Variable>(lhs.value),
                                                         node_to_term(rhs));
                if (rvar)
                    return FilterCondition::equals_const(std::get<Variable>(rhs.value),
                                                         node_to_term(lhs));
                throw QueryError(Stage::Translate, cond.position,
                                 "filter equality needs at least one variable");
            }
            case AstCondition::Kind::Not:
                return FilterCondition::negation(condition_to_filter(*cond.left));
            case AstCondition::Kind::Or:
                return FilterCondition::disjunction(condition_to_filter(*cond.left),
                                                    condition_to_filter(*cond.right));
            case AstCondition::Kind::And:
                return FilterCondition::conjunction(condition_to_filter(*cond.left),
                                                    condition_to_filter(*cond.right));
        }
        throw QueryError(Stage::Translate, cond.position, "unreachable condition kind");
    }

    ExprPtr translate_group(const GroupPattern& group) const {
        ExprPtr g = empty_bgp();
        std::vector<FilterPtr> filters;
        for (const GroupElement& element : group.elements) {
            if (const auto* block = std::get_if<TriplesBlock>(&element)) {
                std::vector<TriplePatternStar> patterns;
                patterns.reserve(block->statements.size());
                for (const AstStatement& st : block->statements)
                    statement_to_patterns(st, patterns);
                g = joined(std::move(g), AlgebraExpression::bgp(std::move(patterns)));
            } else if (const auto* bind = std::get_if<BindClause>(&element)) {
                if (bind->is_embedded()) {
                    const AstNode& node = *std::get<AstNodePtr>(bind->value);
                    const auto& emb = std::get<AstEmbedded>(node.value);
                    // the catch-all case of the group translation: joined in
                    // place rather than folded like Extend
                    g = joined(std::move(g),
                               AlgebraExpression::tr(lift_embedded(emb), bind->target));
                } else if (const auto* var = std::get_if<Variable>(&bind->value)) {
                    g = AlgebraExpression::assign_variable(std::move(g), bind->target, *var);
                } else if (const auto* lit = std::get_if<AstLiteral>(&bind->value)) {
                    AstNode tmp{*lit, bind->position};
                    g = AlgebraExpression::assign_constant(std::move(g), bind->target,
                                                           node_to_term(tmp));
                } else {
                    const auto& ref = std::get<AstIriRef>(bind->value);
                    g = AlgebraExpression::assign_constant(std::move(g), bind->target,
                                                           StarTerm(Iri(ref.value)));
                }
            } else if (const auto* filt = std::get_if<FilterClause>(&element)) {
                filters.push_back(condition_to_filter(*filt->condition));
            } else if (const auto* opt = std::get_if<OptionalClause>(&element)) {
                g = AlgebraExpression::optional(std::move(g), translate_group(*opt->group));
            } else if (const auto* uni = std::get_if<UnionClause>(&element)) {
                ExprPtr u = translate_group(*uni->branches.at(0));
                for (std::size_t i = 1; i < uni->branches.size(); ++i)
                    u = AlgebraExpression::set_union(std::move(u),
                                                     translate_group(*uni->branches[i]));
                g = joined(std::move(g), std::move(u));
            } else if (const auto* nested = std::get_if<NestedGroup>(&element)) {
                g = joined(std::move(g), translate_group(*nested->group));
            }
        }
        for (const FilterPtr& f : filters) g = AlgebraExpression::filter(std::move(g), f);
        return g;
    }
};

} // namespace

TranslatedQuery translate(const QueryAst& ast) {
    Translator translator;
    TranslatedQuery out;
    out.expr = translator.translate_group(ast.where);
    if (ast.select_all) {
        ScopeReport scope = check_scope(ast);
        out.projection = scope.in_scope;
    } else {
        for (const Variable& v : ast.select_vars)
            if (std::find(out.projection.begin(), out.projection.end(), v) ==
                out.projection.end())
                out.projection.push_back(v);
    }
    return out;
}

QueryResult execute_query(std::string_view query_text, const StarGraph& g,
                          const ParseQueryOptions& options) {
    QueryAst ast = parse_query(query_text, options);
    ScopeReport scope = check_scope(ast);
    if (!scope.ok()) {
        const ScopeViolation& first = scope.violations.front();
        throw QueryError(Stage::Scope, first.position, first.message);
    }
    QueryAst expanded = expand_syntax(ast);
    TranslatedQuery translated = translate(expanded);
    SolutionMultiset all = Evaluator(g).evaluate(*translated.expr);
    std::set<Variable> projection(translated.projection.begin(), translated.projection.end());
    return QueryResult{translated.projection, project(all, projection)};
}

} // namespace rdfstar::query
