#include "rdfstar/reify.hpp"

#include <stdexcept>
#include <string>

#include "rdfstar/vocab.hpp"

namespace rdfstar {

const BlankNode& BnodeAssignment::at(const StarTriple& t) const {
    auto it = mapping_.find(t);
    if (it == mapping_.end())
        throw std::out_of_range("triple is not in the bnode assignment's domain");
    return it->second;
}

BnodeAssignment make_bnode_assignment(const StarGraph& g) {
    if (!g.frozen()) throw std::logic_error("bnode assignment requires a frozen graph");

    std::set<std::string> used;
    for (const StarTerm& term : terms_plus(g))
        if (term.is_bnode()) used.insert(term.bnode().label());

    BnodeAssignment out;
    std::size_t counter = 0;
    for (const StarTriple& t : trefs(g)) {
        std::string label;
        do {
            label = "t" + std::to_string(++counter);
        } while (used.count(label) != 0);
        out.mapping_.emplace(t, BlankNode(label));
    }
    return out;
}

namespace {
// id*: embedded triples map to their blank nodes, everything else to itself.
StarTerm id_star(const StarTerm& x, const BnodeAssignment& id) {
    if (x.is_triple() && id.contains(x.triple())) return StarTerm(id.at(x.triple()));
    return x;
}
} // namespace

std::set<StarTriple> reify(const StarTriple& t, const BnodeAssignment& id) {
    StarTerm node(id.at(t)); // throws if t is outside the domain
    return {
        StarTriple(node, vocab::rdf_type(), StarTerm(vocab::rdf_statement())),
        StarTriple(node, vocab::rdf_subject(), id_star(t.subject(), id)),
        StarTriple(node, vocab::rdf_predicate(), StarTerm(t.predicate())),
        StarTriple(node, vocab::rdf_object(), id_star(t.object(), id)),
    };
}

PlainGraph unfold_triple(const StarTriple& t, const BnodeAssignment& id) {
    PlainGraph out;
    const bool s_triple = t.subject().is_triple();
    const bool o_triple = t.object().is_triple();

    if (!s_triple && !o_triple) {
        out.insert(t);
        return out;
    }
    out.insert(StarTriple(id_star(t.subject(), id), t.predicate(), id_star(t.object(), id)));
    for (const StarTerm* pos : {&t.subject(), &t.object()}) {
        if (!pos->is_triple()) continue;
        const StarTriple& inner = pos->triple();
        if (!id.contains(inner))
            throw std::out_of_range("embedded triple is missing from the bnode assignment");
        for (const StarTriple& r : reify(inner, id)) out.insert(r);
        PlainGraph recursive = unfold_triple(inner, id);
        for (const StarTriple& u : recursive.triples()) out.insert(u);
    }
    return out;
}

UnfoldResult unfold_graph(const StarGraph& g) {
    if (!g.frozen()) throw std::logic_error("unfold requires a frozen graph");
    UnfoldResult result{PlainGraph{}, make_bnode_assignment(g)};
    for (const StarTriple& t : g.triples()) {
        PlainGraph part = unfold_triple(t, result.assignment);
        for (const StarTriple& u : part.triples()) result.graph.insert(u);
    }
    return result;
}

} // namespace rdfstar
