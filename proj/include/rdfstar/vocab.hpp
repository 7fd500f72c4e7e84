#ifndef RDFSTAR_VOCAB_HPP
#define RDFSTAR_VOCAB_HPP

#include "rdfstar/term.hpp"

namespace rdfstar::vocab {

const Iri& rdf_type();
const Iri& rdf_statement();
const Iri& rdf_subject();
const Iri& rdf_predicate();
const Iri& rdf_object();
const Iri& rdf_first();
const Iri& rdf_rest();
const Iri& rdf_nil();
const Iri& rdf_lang_string();

const Iri& xsd_string();
const Iri& xsd_integer();
const Iri& xsd_decimal();
const Iri& xsd_double();
const Iri& xsd_boolean();

} // namespace rdfstar::vocab

#endif
