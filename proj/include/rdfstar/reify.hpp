#ifndef RDFSTAR_REIFY_HPP
#define RDFSTAR_REIFY_HPP

#include <map>
#include <set>

#include "rdfstar/graph.hpp"
#include "rdfstar/term.hpp"

namespace rdfstar {

/// A bijection from the embedded triples of one graph to fresh blank nodes.
/// Assigned labels never collide with blank nodes mentioned anywhere in the
/// graph.
class BnodeAssignment {
public:
    bool contains(const StarTriple& t) const { return mapping_.count(t) != 0; }

    /// Throws std::out_of_range if t is not an embedded triple of the graph
    /// the assignment was built for.
    const BlankNode& at(const StarTriple& t) const;

    std::size_t size() const { return mapping_.size(); }
    const std::map<StarTriple, BlankNode>& mapping() const { return mapping_; }

private:
    friend BnodeAssignment make_bnode_assignment(const StarGraph&);
    std::map<StarTriple, BlankNode> mapping_;
};

/// Deterministic bnode assignment for g: embedded triples are enumerated in
/// canonical order and named "t1", "t2", ..., skipping labels that already
/// occur in g. Requires a frozen graph.
BnodeAssignment make_bnode_assignment(const StarGraph& g);

/// The four rdf:Statement / rdf:subject / rdf:predicate / rdf:object triples
/// describing t under the assignment. Embedded triples in subject or object
/// position are replaced by their blank nodes. t itself must be in the
/// assignment's domain.
std::set<StarTriple> reify(const StarTriple& t, const BnodeAssignment& id);

/// Recursive unfolding of one triple: triple-valued positions are replaced
/// by their blank nodes, and the reification plus the unfolding of each
/// embedded triple are unioned in. Ordinary triples map to themselves.
PlainGraph unfold_triple(const StarTriple& t, const BnodeAssignment& id);

struct UnfoldResult {
    PlainGraph graph;
    BnodeAssignment assignment;
};

/// Unfolds a whole graph under one shared assignment, which is returned so
/// callers can relate blank nodes back to embedded triples. Requires a
/// frozen graph.
UnfoldResult unfold_graph(const StarGraph& g);

} // namespace rdfstar

#endif
