#ifndef RDFSTAR_GRAPH_HPP
#define RDFSTAR_GRAPH_HPP

#include <set>

#include "rdfstar/term.hpp"

namespace rdfstar {

/// A duplicate-free set of RDF* triples with a maintained index of every
/// (recursively) embedded triple. Graphs are built by insertion and then
/// frozen; a frozen graph is immutable and safe to share across threads.
class StarGraph {
public:
    StarGraph() = default;

    /// Adds a triple; returns false if a structurally equal triple is
    /// already present. Throws std::logic_error on a frozen graph.
    bool insert(const StarTriple& t);

    /// Copy of this graph with t added. The copy is not frozen.
    StarGraph with(const StarTriple& t) const;

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }
    bool contains(const StarTriple& t) const { return triples_.count(t) != 0; }

    /// Asserted triples in canonical order.
    const std::set<StarTriple>& triples() const { return triples_; }

    /// All triples embedded at any depth within the asserted triples.
    const std::set<StarTriple>& embedded() const { return embedded_; }

    friend bool operator==(const StarGraph& a, const StarGraph& b) {
        return a.triples_ == b.triples_;
    }
    friend bool operator!=(const StarGraph& a, const StarGraph& b) { return !(a == b); }

private:
    std::set<StarTriple> triples_;
    std::set<StarTriple> embedded_;
    bool frozen_ = false;
};

/// All RDF terms and RDF* triples mentioned in t, recursively. Embedded
/// triples appear both as members and unfolded into their own terms; the
/// triple t itself is not a member.
std::set<StarTerm> terms_plus(const StarTriple& t);

/// Union of terms_plus over all asserted triples.
std::set<StarTerm> terms_plus(const StarGraph& g);

/// The set of all triples embedded (recursively) in g's triples. Asserted
/// triples are included only if they also occur embedded somewhere.
const std::set<StarTriple>& trefs(const StarGraph& g);

/// True iff t mentions at least one embedded triple.
bool is_metadata_triple(const StarTriple& t);

/// An ordinary RDF graph: every member triple is 0-nested.
class PlainGraph {
public:
    PlainGraph() = default;

    /// Throws std::invalid_argument if t is nested.
    bool insert(const StarTriple& t);

    /// Validates that every triple of g is 0-nested.
    static PlainGraph from(const StarGraph& g);

    /// View as a StarGraph (every plain graph is an RDF* graph).
    StarGraph to_star() const;

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }
    bool contains(const StarTriple& t) const { return triples_.count(t) != 0; }
    const std::set<StarTriple>& triples() const { return triples_; }

    friend bool operator==(const PlainGraph& a, const PlainGraph& b) {
        return a.triples_ == b.triples_;
    }
    friend bool operator!=(const PlainGraph& a, const PlainGraph& b) { return !(a == b); }

private:
    std::set<StarTriple> triples_;
};

} // namespace rdfstar

#endif
