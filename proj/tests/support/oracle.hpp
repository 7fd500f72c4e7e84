#ifndef RDFSTAR_TESTS_ORACLE_HPP
#define RDFSTAR_TESTS_ORACLE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "rdfstar/algebra.hpp"
#include "rdfstar/graph.hpp"
#include "rdfstar/pattern.hpp"
#include "rdfstar/reify.hpp"
#include "rdfstar/vocab.hpp"

// Exhaustive reference evaluation of BGPs: enumerate every mapping of the
// variables and blank nodes into the graph's term universe and test the
// instantiated patterns for membership. Deliberately independent of the
// engine (no indexes, no unification, no join ordering).

namespace rdfstar::oracle {

using VarMap = std::map<Variable, StarTerm>;
using BNodeMap = std::map<BlankNode, StarTerm>;

inline std::optional<StarTriple> instantiate(const TriplePatternStar& tp, const VarMap& vars,
                                             const BNodeMap& bnodes);

inline std::optional<StarTerm> instantiate_position(const PatternTerm& t, const VarMap& vars,
                                                    const BNodeMap& bnodes) {
    if (t.is_variable()) return vars.at(t.variable());
    if (t.is_bnode()) {
        auto it = bnodes.find(t.bnode());
        // a blank node in the data (inside a ground value) stays itself
        if (it == bnodes.end()) return StarTerm(t.bnode());
        return it->second;
    }
    if (t.is_pattern()) {
        auto inner = instantiate(t.pattern(), vars, bnodes);
        if (!inner) return std::nullopt;
        return StarTerm(std::move(*inner));
    }
    return t.as_term();
}

inline std::optional<StarTriple> instantiate(const TriplePatternStar& tp, const VarMap& vars,
                                             const BNodeMap& bnodes) {
    auto s = instantiate_position(tp.subject(), vars, bnodes);
    auto p = instantiate_position(tp.predicate(), vars, bnodes);
    auto o = instantiate_position(tp.object(), vars, bnodes);
    if (!s || !p || !o) return std::nullopt;
    if (!p->is_iri() || s->is_literal()) return std::nullopt;
    try {
        return StarTriple(std::move(*s), p->iri(), std::move(*o));
    } catch (const NestingDepthError&) {
        return std::nullopt;
    }
}

/// Number of assignments the full enumeration would try.
inline double enumeration_size(const std::vector<TriplePatternStar>& patterns,
                               const StarGraph& g) {
    std::set<Variable> vars;
    std::set<BlankNode> bnodes;
    for (const auto& tp : patterns) {
        auto vs = pattern_variables(tp);
        vars.insert(vs.begin(), vs.end());
        auto bs = pattern_bnodes(tp);
        bnodes.insert(bs.begin(), bs.end());
    }
    double size = 1;
    double universe = static_cast<double>(terms_plus(g).size());
    for (std::size_t i = 0; i < vars.size() + bnodes.size(); ++i) size *= universe;
    return size;
}

inline SolutionMultiset eval_bgp(const std::vector<TriplePatternStar>& raw, const StarGraph& g) {
    std::vector<TriplePatternStar> patterns(raw);
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());

    std::set<Variable> var_set;
    std::set<BlankNode> bnode_set;
    for (const auto& tp : patterns) {
        auto vs = pattern_variables(tp);
        var_set.insert(vs.begin(), vs.end());
        auto bs = pattern_bnodes(tp);
        bnode_set.insert(bs.begin(), bs.end());
    }
    std::vector<Variable> vars(var_set.begin(), var_set.end());
    std::vector<BlankNode> bnodes(bnode_set.begin(), bnode_set.end());

    std::vector<StarTerm> universe;
    for (const StarTerm& t : terms_plus(g)) universe.push_back(t);

    std::unordered_set<StarTriple, TripleHash> members;
    for (const StarTriple& t : g.triples()) members.insert(t);
    for (const StarTriple& t : g.embedded()) members.insert(t);

    std::map<SolutionMapping, std::set<std::vector<StarTerm>>> hits;

    const std::size_t dims = vars.size() + bnodes.size();
    std::vector<std::size_t> odometer(dims, 0);

    if (dims > 0 && universe.empty()) return SolutionMultiset{};

    while (true) {
        VarMap var_map;
        BNodeMap bnode_map;
        for (std::size_t i = 0; i < vars.size(); ++i) var_map.emplace(vars[i], universe[odometer[i]]);
        for (std::size_t i = 0; i < bnodes.size(); ++i)
            bnode_map.emplace(bnodes[i], universe[odometer[vars.size() + i]]);

        bool all_match = true;
        for (const auto& tp : patterns) {
            auto t = instantiate(tp, var_map, bnode_map);
            if (!t || members.count(*t) == 0) {
                all_match = false;
                break;
            }
        }
        if (all_match) {
            SolutionMapping eta;
            for (const auto& [v, value] : var_map) eta.bind(v, value);
            std::vector<StarTerm> rho;
            for (const auto& [b, value] : bnode_map) rho.push_back(value);
            hits[std::move(eta)].insert(std::move(rho));
        }

        // advance the odometer
        std::size_t d = 0;
        for (; d < dims; ++d) {
            if (++odometer[d] < universe.size()) break;
            odometer[d] = 0;
        }
        if (d == dims) break;
    }

    SolutionMultiset out;
    for (auto& [eta, rhos] : hits) out.add(eta, rhos.size());
    return out;
}

// --- reification-style expansion of a BGP* (for the correspondence test) ---

struct ReificationExpansion {
    std::vector<TriplePatternStar> patterns;
    std::set<Variable> fresh_vars;
};

inline PatternTerm expand_position(const PatternTerm& t, ReificationExpansion& out,
                                   std::size_t& counter);

inline PatternTerm expand_embedded(const TriplePatternStar& tp, ReificationExpansion& out,
                                   std::size_t& counter) {
    Variable node("reif" + std::to_string(counter++));
    out.fresh_vars.insert(node);
    PatternTerm subject = expand_position(tp.subject(), out, counter);
    PatternTerm object = expand_position(tp.object(), out, counter);
    out.patterns.emplace_back(PatternTerm(node), PatternTerm(vocab::rdf_type()),
                              PatternTerm(vocab::rdf_statement()));
    out.patterns.emplace_back(PatternTerm(node), PatternTerm(vocab::rdf_subject()), subject);
    out.patterns.emplace_back(PatternTerm(node), PatternTerm(vocab::rdf_predicate()),
                              tp.predicate());
    out.patterns.emplace_back(PatternTerm(node), PatternTerm(vocab::rdf_object()), object);
    return PatternTerm(node);
}

inline PatternTerm expand_position(const PatternTerm& t, ReificationExpansion& out,
                                   std::size_t& counter) {
    if (t.is_pattern()) return expand_embedded(t.pattern(), out, counter);
    if (t.is_triple()) return expand_embedded(pattern_from_triple(t.triple()), out, counter);
    return t;
}

/// Each embedded pattern becomes a fresh variable plus the four
/// reification patterns, recursively.
inline ReificationExpansion expand_reification(const std::vector<TriplePatternStar>& patterns) {
    ReificationExpansion out;
    std::size_t counter = 0;
    for (const auto& tp : patterns) {
        PatternTerm s = expand_position(tp.subject(), out, counter);
        PatternTerm o = expand_position(tp.object(), out, counter);
        out.patterns.emplace_back(s, tp.predicate(), o);
    }
    return out;
}

/// Maps a solution of the star side to the expected solution of the
/// reified side: embedded-triple values become their assigned blank nodes.
inline SolutionMapping map_through_assignment(const SolutionMapping& eta,
                                              const BnodeAssignment& id) {
    SolutionMapping out;
    for (const auto& [v, value] : eta.bindings()) {
        if (value.is_triple())
            out.bind(v, StarTerm(id.at(value.triple())));
        else
            out.bind(v, value);
    }
    return out;
}

} // namespace rdfstar::oracle

#endif
