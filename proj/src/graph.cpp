#include "rdfstar/graph.hpp"

#include <stdexcept>

namespace rdfstar {

namespace {
void collect_embedded(const StarTriple& t, std::set<StarTriple>& out) {
    for (const StarTerm* pos : {&t.subject(), &t.object()}) {
        if (pos->is_triple()) {
            out.insert(pos->triple());
            collect_embedded(pos->triple(), out);
        }
    }
}
} // namespace

bool StarGraph::insert(const StarTriple& t) {
    if (frozen_) throw std::logic_error("cannot insert into a frozen graph");
    auto [it, added] = triples_.insert(t);
    if (added) collect_embedded(t, embedded_);
    return added;
}

StarGraph StarGraph::with(const StarTriple& t) const {
    StarGraph copy;
    copy.triples_ = triples_;
    copy.embedded_ = embedded_;
    copy.insert(t);
    return copy;
}

std::set<StarTerm> terms_plus(const StarTriple& t) {
    std::set<StarTerm> out;
    out.insert(t.subject());
    out.insert(StarTerm(t.predicate()));
    out.insert(t.object());
    for (const StarTerm* pos : {&t.subject(), &t.object()}) {
        if (pos->is_triple()) {
            auto inner = terms_plus(pos->triple());
            out.insert(inner.begin(), inner.end());
        }
    }
    return out;
}

std::set<StarTerm> terms_plus(const StarGraph& g) {
    std::set<StarTerm> out;
    for (const StarTriple& t : g.triples()) {
        auto inner = terms_plus(t);
        out.insert(inner.begin(), inner.end());
    }
    return out;
}

const std::set<StarTriple>& trefs(const StarGraph& g) { return g.embedded(); }

bool is_metadata_triple(const StarTriple& t) { return t.depth() > 0; }

bool PlainGraph::insert(const StarTriple& t) {
    if (t.depth() != 0)
        throw std::invalid_argument("plain graphs hold only 0-nested triples");
    return triples_.insert(t).second;
}

PlainGraph PlainGraph::from(const StarGraph& g) {
    PlainGraph out;
    for (const StarTriple& t : g.triples()) out.insert(t);
    return out;
}

StarGraph PlainGraph::to_star() const {
    StarGraph out;
    for (const StarTriple& t : triples_) out.insert(t);
    return out;
}

} // namespace rdfstar
