#include "rdfstar/results.hpp"

#include <json.hpp>

#include "rdfstar/turtle.hpp"
#include "rdfstar/vocab.hpp"

namespace rdfstar {

std::string results_to_tsv(const query::QueryResult& result) {
    std::string out;
    bool first = true;
    for (const Variable& v : result.variables) {
        if (!first) out += "\t";
        first = false;
        out += "?" + v.name();
    }
    out += "\n";
    for (const auto& [eta, card] : result.solutions.entries()) {
        std::string row;
        bool first_cell = true;
        for (const Variable& v : result.variables) {
            if (!first_cell) row += "\t";
            first_cell = false;
            if (eta.bound(v)) row += term_to_turtle(eta.at(v));
        }
        row += "\n";
        for (std::uint64_t i = 0; i < card; ++i) out += row;
    }
    return out;
}

namespace {

nlohmann::ordered_json term_to_json(const StarTerm& term) {
    nlohmann::ordered_json value;
    if (term.is_iri()) {
        value["type"] = "uri";
        value["value"] = term.iri().value();
    } else if (term.is_bnode()) {
        value["type"] = "bnode";
        value["value"] = term.bnode().label();
    } else if (term.is_literal()) {
        const Literal& l = term.literal();
        value["type"] = "literal";
        value["value"] = l.lexical();
        if (l.language())
            value["xml:lang"] = *l.language();
        else if (!(l.datatype() == vocab::xsd_string()))
            value["datatype"] = l.datatype().value();
    } else {
        const StarTriple& t = term.triple();
        value["type"] = "triple";
        nlohmann::ordered_json inner;
        inner["subject"] = term_to_json(t.subject());
        inner["predicate"] = term_to_json(StarTerm(t.predicate()));
        inner["object"] = term_to_json(t.object());
        value["value"] = std::move(inner);
    }
    return value;
}

} // namespace

std::string results_to_json(const query::QueryResult& result) {
    nlohmann::ordered_json doc;
    auto& vars = doc["head"]["vars"] = nlohmann::ordered_json::array();
    for (const Variable& v : result.variables) vars.push_back(v.name());
    auto& bindings = doc["results"]["bindings"] = nlohmann::ordered_json::array();
    for (const auto& [eta, card] : result.solutions.entries()) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (const Variable& v : result.variables)
            if (eta.bound(v)) row[v.name()] = term_to_json(eta.at(v));
        for (std::uint64_t i = 0; i < card; ++i) bindings.push_back(row);
    }
    return doc.dump(2) + "\n";
}

} // namespace rdfstar
