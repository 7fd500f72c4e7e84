#ifndef RDFSTAR_TURTLE_HPP
#define RDFSTAR_TURTLE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdfstar/graph.hpp"
#include "rdfstar/term.hpp"

namespace rdfstar {

struct SourcePosition {
    std::size_t line = 1;   // 1-based
    std::size_t column = 1; // 1-based, in code points
    std::size_t byte_offset = 0;
};

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    SourcePosition position;
    std::string message;
};

/// Renders "line:column: error: message".
std::string format_diagnostic(const Diagnostic& d);

struct ParseResult {
    StarGraph graph;
    std::map<std::string, Iri> prefixes;
    std::optional<Iri> base;
    std::vector<Diagnostic> diagnostics;

    bool ok() const {
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) return false;
        return true;
    }
};

struct ParseOptions {
    std::optional<Iri> base;
    std::size_t max_nesting = 0; // 0 means the process-wide default
};

/// Parses a Turtle* document: standard Turtle plus embedded triples written
/// "<< subject predicate object >>" in subject and object position. On
/// failure the result graph holds whatever parsed cleanly and diagnostics
/// carry the positioned error.
ParseResult parse_turtlestar(std::string_view input, const ParseOptions& options = {});

/// Serializes a frozen graph as Turtle*, one statement per asserted triple
/// in canonical order. Prefixes are applied greedily; the output re-parses
/// to an equal graph.
std::string serialize_turtlestar(const StarGraph& g,
                                 const std::map<std::string, Iri>& prefixes = {});

/// Serializes an ordinary graph as N-Triples, one "<s> <p> <o> ." line per
/// triple in canonical order.
std::string serialize_ntriples(const PlainGraph& g);

/// Turtle-style rendering of a single term with optional prefix
/// compression; embedded triples are wrapped in "<<" and ">>".
std::string term_to_turtle(const StarTerm& term,
                           const std::map<std::string, Iri>& prefixes = {});
std::string triple_to_turtle(const StarTriple& t,
                             const std::map<std::string, Iri>& prefixes = {});

} // namespace rdfstar

#endif
