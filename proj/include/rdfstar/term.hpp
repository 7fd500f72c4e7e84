#ifndef RDFSTAR_TERM_HPP
#define RDFSTAR_TERM_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace rdfstar {

class StarTriple;
using TriplePtr = std::shared_ptr<const StarTriple>;

/// Thrown when constructing or parsing a triple whose nesting depth exceeds
/// the configured limit.
class NestingDepthError : public std::runtime_error {
public:
    explicit NestingDepthError(std::size_t depth, std::size_t limit);
    std::size_t depth;
    std::size_t limit;
};

/// Process-wide cap on triple nesting depth. Default 128.
std::size_t max_nesting_depth();
void set_max_nesting_depth(std::size_t limit);

/// An absolute IRI. The stored form carries no angle brackets and no
/// whitespace; both are rejected at construction.
class Iri {
public:
    explicit Iri(std::string value);

    const std::string& value() const { return value_; }

    friend bool operator==(const Iri& a, const Iri& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Iri& a, const Iri& b) { return !(a == b); }
    friend bool operator<(const Iri& a, const Iri& b) { return a.value_ < b.value_; }

private:
    std::string value_;
};

/// A blank node. The label must be in the Turtle BLANK_NODE_LABEL lexical
/// space (written form: "_:" + label).
class BlankNode {
public:
    explicit BlankNode(std::string label);

    const std::string& label() const { return label_; }

    friend bool operator==(const BlankNode& a, const BlankNode& b) { return a.label_ == b.label_; }
    friend bool operator!=(const BlankNode& a, const BlankNode& b) { return !(a == b); }
    friend bool operator<(const BlankNode& a, const BlankNode& b) { return a.label_ < b.label_; }

private:
    std::string label_;
};

/// An RDF literal. Every literal carries a datatype; plain literals get
/// xsd:string, language-tagged ones rdf:langString with a lowercase tag.
class Literal {
public:
    /// xsd:string literal.
    static Literal str(std::string lexical);
    /// Literal with an explicit datatype (must not be rdf:langString).
    static Literal typed(std::string lexical, Iri datatype);
    /// rdf:langString literal; the tag is validated and lowercased.
    static Literal lang_tagged(std::string lexical, std::string language);

    const std::string& lexical() const { return lexical_; }
    const Iri& datatype() const { return datatype_; }
    const std::optional<std::string>& language() const { return language_; }

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.lexical_ == b.lexical_ && a.datatype_ == b.datatype_ && a.language_ == b.language_;
    }
    friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }

private:
    Literal(std::string lexical, Iri datatype, std::optional<std::string> language);

    std::string lexical_;
    Iri datatype_;
    std::optional<std::string> language_;
};

/// One position of an RDF* triple: an IRI, a blank node, a literal, or a
/// (nested) triple. Values are immutable; triples are shared by pointer but
/// compared structurally.
class StarTerm {
public:
    StarTerm(Iri iri);
    StarTerm(BlankNode bnode);
    StarTerm(Literal literal);
    StarTerm(StarTriple triple);
    StarTerm(TriplePtr triple);

    bool is_iri() const { return std::holds_alternative<Iri>(value_); }
    bool is_bnode() const { return std::holds_alternative<BlankNode>(value_); }
    bool is_literal() const { return std::holds_alternative<Literal>(value_); }
    bool is_triple() const { return std::holds_alternative<TriplePtr>(value_); }

    const Iri& iri() const { return std::get<Iri>(value_); }
    const BlankNode& bnode() const { return std::get<BlankNode>(value_); }
    const Literal& literal() const { return std::get<Literal>(value_); }
    const StarTriple& triple() const { return *std::get<TriplePtr>(value_); }
    const TriplePtr& triple_ptr() const { return std::get<TriplePtr>(value_); }

    std::size_t hash() const;

    friend bool operator==(const StarTerm& a, const StarTerm& b);
    friend bool operator!=(const StarTerm& a, const StarTerm& b) { return !(a == b); }
    friend bool operator<(const StarTerm& a, const StarTerm& b);

private:
    std::variant<Iri, BlankNode, Literal, TriplePtr> value_;
};

/// An RDF* triple. Subject and object may themselves be triples; the
/// predicate is always an IRI and the subject is never a literal. Nesting
/// depth and a structural hash are computed once at construction.
class StarTriple {
public:
    StarTriple(StarTerm subject, Iri predicate, StarTerm object);

    const StarTerm& subject() const { return subject_; }
    const Iri& predicate() const { return predicate_; }
    const StarTerm& object() const { return object_; }

    /// Minimal k such that this triple is k-nested; 0 for ordinary triples.
    std::size_t depth() const { return depth_; }
    std::size_t hash() const { return hash_; }

    friend bool operator==(const StarTriple& a, const StarTriple& b);
    friend bool operator!=(const StarTriple& a, const StarTriple& b) { return !(a == b); }
    friend bool operator<(const StarTriple& a, const StarTriple& b);

private:
    StarTerm subject_;
    Iri predicate_;
    StarTerm object_;
    std::size_t depth_;
    std::size_t hash_;
};

/// Total order over terms: IRIs < blank nodes < literals < triples, each
/// kind ordered internally (literals by datatype, lexical form, language;
/// triples recursively by subject, predicate, object). Used wherever a
/// canonical enumeration order is required.
int compare(const StarTerm& a, const StarTerm& b);
int compare(const StarTriple& a, const StarTriple& b);

std::size_t nesting_depth(const StarTriple& t);

struct TermHash {
    std::size_t operator()(const StarTerm& t) const { return t.hash(); }
};
struct TripleHash {
    std::size_t operator()(const StarTriple& t) const { return t.hash(); }
};

} // namespace rdfstar

#endif
