#include "rdfstar/vocab.hpp"

namespace rdfstar::vocab {

namespace {
constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
} // namespace

#define RDFSTAR_VOCAB_ENTRY(fn, ns, local)         \
    const Iri& fn() {                              \
        static const Iri iri{std::string(ns) + local}; \
        return iri;                                \
    }

RDFSTAR_VOCAB_ENTRY(rdf_type, kRdf, "type")
RDFSTAR_VOCAB_ENTRY(rdf_statement, kRdf, "Statement")
RDFSTAR_VOCAB_ENTRY(rdf_subject, kRdf, "subject")
RDFSTAR_VOCAB_ENTRY(rdf_predicate, kRdf, "predicate")
RDFSTAR_VOCAB_ENTRY(rdf_object, kRdf, "object")
RDFSTAR_VOCAB_ENTRY(rdf_first, kRdf, "first")
RDFSTAR_VOCAB_ENTRY(rdf_rest, kRdf, "rest")
RDFSTAR_VOCAB_ENTRY(rdf_nil, kRdf, "nil")
RDFSTAR_VOCAB_ENTRY(rdf_lang_string, kRdf, "langString")

RDFSTAR_VOCAB_ENTRY(xsd_string, kXsd, "string")
RDFSTAR_VOCAB_ENTRY(xsd_integer, kXsd, "integer")
RDFSTAR_VOCAB_ENTRY(xsd_decimal, kXsd, "decimal")
RDFSTAR_VOCAB_ENTRY(xsd_double, kXsd, "double")
RDFSTAR_VOCAB_ENTRY(xsd_boolean, kXsd, "boolean")

#undef RDFSTAR_VOCAB_ENTRY

} // namespace rdfstar::vocab
