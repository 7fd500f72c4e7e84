#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rdfstar/query.hpp"
#include "rdfstar/reify.hpp"
#include "rdfstar/results.hpp"
#include "rdfstar/turtle.hpp"

namespace py = pybind11;
using namespace rdfstar;

namespace {

StarGraph parse_or_raise(const std::string& text, const std::string& base,
                         std::size_t max_nesting) {
    ParseOptions options;
    if (!base.empty()) options.base = Iri(base);
    options.max_nesting = max_nesting;
    ParseResult result = parse_turtlestar(text, options);
    if (!result.ok()) throw py::value_error(format_diagnostic(result.diagnostics.front()));
    return result.graph;
}

std::vector<std::map<std::string, std::string>> query_rows(const StarGraph& g,
                                                           const std::string& query_text) {
    query::QueryResult result = query::execute_query(query_text, g);
    std::vector<std::map<std::string, std::string>> rows;
    for (const auto& [eta, card] : result.solutions.entries()) {
        std::map<std::string, std::string> row;
        for (const Variable& v : result.variables)
            if (eta.bound(v)) row[v.name()] = term_to_turtle(eta.at(v));
        for (std::uint64_t i = 0; i < card; ++i) rows.push_back(row);
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_rdfstar, m) {
    m.doc() = "RDF* toolkit: Turtle* parsing, reification unfolding, SPARQL* querying";

    py::class_<StarGraph>(m, "Graph")
        .def(py::init<>())
        .def("__len__", &StarGraph::size)
        .def("__eq__", [](const StarGraph& a, const StarGraph& b) { return a == b; })
        .def_property_readonly("embedded_count",
                               [](const StarGraph& g) { return g.embedded().size(); })
        .def_property_readonly("max_depth",
                               [](const StarGraph& g) {
                                   std::size_t depth = 0;
                                   for (const auto& t : g.triples())
                                       depth = std::max(depth, t.depth());
                                   return depth;
                               })
        .def("triples",
             [](const StarGraph& g) {
                 std::vector<std::string> out;
                 for (const auto& t : g.triples()) out.push_back(triple_to_turtle(t));
                 return out;
             })
        .def("serialize", [](const StarGraph& g) { return serialize_turtlestar(g); })
        .def("unfold",
             [](const StarGraph& g) {
                 UnfoldResult unfolded = unfold_graph(g);
                 StarGraph star = unfolded.graph.to_star();
                 star.freeze();
                 return star;
             })
        .def("to_ntriples", [](const StarGraph& g) { return serialize_ntriples(PlainGraph::from(g)); })
        .def("query", &query_rows, py::arg("query"));

    m.def("parse", &parse_or_raise, py::arg("text"), py::arg("base") = "",
          py::arg("max_nesting") = std::size_t{0},
          "Parse a Turtle* document into a Graph; raises ValueError on syntax errors.");
    m.def("query", &query_rows, py::arg("graph"), py::arg("query"),
          "Run a SPARQL* query; returns one dict per solution occurrence.");
    m.def(
        "query_json",
        [](const StarGraph& g, const std::string& text) {
            return results_to_json(query::execute_query(text, g));
        },
        py::arg("graph"), py::arg("query"), "Run a SPARQL* query; returns the JSON results text.");

    py::register_exception<query::QueryError>(m, "QueryError");
}
