#ifndef RDFSTAR_RESULTS_HPP
#define RDFSTAR_RESULTS_HPP

#include <string>

#include "rdfstar/query.hpp"

namespace rdfstar {

/// Tab-separated rows: a header of projected variables, then one row per
/// multiset occurrence (cardinality n emits n identical rows). Embedded
/// triple values are written in "<< ... >>" form, unbound variables as
/// empty cells.
std::string results_to_tsv(const query::QueryResult& result);

/// JSON results document; embedded triples appear as recursive
/// {subject, predicate, object} value objects.
std::string results_to_json(const query::QueryResult& result);

} // namespace rdfstar

#endif
