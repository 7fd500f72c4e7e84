#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rdfstar/query.hpp"
#include "rdfstar/reify.hpp"
#include "rdfstar/results.hpp"
#include "rdfstar/turtle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1; // parse or semantic errors in the input
constexpr int kExitIo = 2;    // environment and I/O failures

struct Options {
    std::string output;
    std::string format;
    std::string base;
    std::size_t max_nesting = 0;
    bool quiet = false;
};

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

int write_output(const Options& options, const std::string& content) {
    if (options.output.empty() || options.output == "-") {
        std::cout << content;
        return kExitOk;
    }
    std::ofstream out(options.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << options.output << "\n";
        return kExitIo;
    }
    out << content;
    return kExitOk;
}

rdfstar::ParseOptions parse_options(const Options& options) {
    rdfstar::ParseOptions popts;
    if (!options.base.empty()) popts.base = rdfstar::Iri(options.base);
    popts.max_nesting = options.max_nesting;
    return popts;
}

/// Exit kExitOk with the parse result, or prints diagnostics and returns
/// an exit code.
int load_graph(const std::string& path, const Options& options, rdfstar::ParseResult& result) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "error: cannot read " << path << "\n";
        return kExitIo;
    }
    result = rdfstar::parse_turtlestar(text, parse_options(options));
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            std::cerr << path << ":" << rdfstar::format_diagnostic(d) << "\n";
        return kExitInput;
    }
    return kExitOk;
}

int cmd_validate(const std::string& path, const Options& options) {
    rdfstar::ParseResult result;
    if (int rc = load_graph(path, options, result)) return rc;
    std::size_t max_depth = 0;
    for (const auto& t : result.graph.triples()) max_depth = std::max(max_depth, t.depth());
    if (!options.quiet) {
        std::cout << result.graph.size() << " triples, " << result.graph.embedded().size()
                  << " embedded, max depth " << max_depth << "\n";
    }
    return kExitOk;
}

int cmd_unfold(const std::string& path, const Options& options) {
    rdfstar::ParseResult result;
    if (int rc = load_graph(path, options, result)) return rc;
    rdfstar::UnfoldResult unfolded = rdfstar::unfold_graph(result.graph);
    std::string format = options.format.empty() ? "ntriples" : options.format;
    if (format == "ntriples") {
        return write_output(options, rdfstar::serialize_ntriples(unfolded.graph));
    }
    if (format == "turtle-star" || format == "turtle") {
        rdfstar::StarGraph star = unfolded.graph.to_star();
        star.freeze();
        return write_output(options, rdfstar::serialize_turtlestar(star, result.prefixes));
    }
    std::cerr << "error: unknown unfold format '" << format << "' (ntriples, turtle-star)\n";
    return kExitIo;
}

int cmd_query(const std::string& data_path, const std::string& query_path,
              const Options& options) {
    rdfstar::ParseResult data;
    if (int rc = load_graph(data_path, options, data)) return rc;
    std::string query_text;
    if (!read_file(query_path, query_text)) {
        std::cerr << "error: cannot read " << query_path << "\n";
        return kExitIo;
    }
    rdfstar::query::ParseQueryOptions qopts;
    if (!options.base.empty()) qopts.base = rdfstar::Iri(options.base);
    rdfstar::query::QueryResult result;
    try {
        result = rdfstar::query::execute_query(query_text, data.graph, qopts);
    } catch (const rdfstar::query::QueryError& e) {
        std::cerr << query_path << ":" << e.what() << "\n";
        return kExitInput;
    }
    std::string format = options.format.empty() ? "tsv" : options.format;
    if (format == "tsv") return write_output(options, rdfstar::results_to_tsv(result));
    if (format == "json") return write_output(options, rdfstar::results_to_json(result));
    std::cerr << "error: unknown query format '" << format << "' (tsv, json)\n";
    return kExitIo;
}

int cmd_stats(const std::string& path, const Options& options) {
    rdfstar::ParseResult result;
    if (int rc = load_graph(path, options, result)) return rc;
    std::size_t metadata = 0;
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& t : result.graph.triples()) {
        if (rdfstar::is_metadata_triple(t)) ++metadata;
        ++histogram[t.depth()];
    }
    std::ostringstream out;
    out << "asserted triples: " << result.graph.size() << "\n";
    out << "metadata triples: " << metadata << "\n";
    out << "distinct embedded triples: " << result.graph.embedded().size() << "\n";
    out << "nesting depth histogram:\n";
    for (const auto& [depth, count] : histogram)
        out << "  " << depth << ": " << count << "\n";
    std::cout << out.str();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RDF* toolkit: Turtle* parsing, reification unfolding, SPARQL* querying"};
    app.require_subcommand(1);
    app.fallthrough();

    Options options;
    app.add_option("-o,--output", options.output, "Output file (default: stdout)")
        ->capture_default_str();
    app.add_option("--format", options.format,
                   "Output format (unfold: ntriples|turtle-star; query: tsv|json)");
    app.add_option("--base", options.base, "Base IRI for resolving relative references");
    app.add_option("--max-nesting", options.max_nesting,
                   "Maximum embedded-triple nesting depth (default 128)");
    app.add_flag("--quiet", options.quiet, "Suppress reports, keep exit codes");

    std::string data_path;
    std::string query_path;

    CLI::App* validate = app.add_subcommand("validate", "Parse a Turtle* file and report counts");
    validate->add_option("data", data_path, "Turtle* input file")->required();

    CLI::App* unfold =
        app.add_subcommand("unfold", "Rewrite embedded triples to standard RDF reification");
    unfold->add_option("data", data_path, "Turtle* input file")->required();

    CLI::App* query = app.add_subcommand("query", "Run a SPARQL* query over a Turtle* file");
    query->add_option("data", data_path, "Turtle* input file")->required();
    query->add_option("query", query_path, "SPARQL* query file")->required();

    CLI::App* stats = app.add_subcommand("stats", "Metadata statistics for a Turtle* file");
    stats->add_option("data", data_path, "Turtle* input file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (options.max_nesting != 0) rdfstar::set_max_nesting_depth(options.max_nesting);
        if (validate->parsed()) return cmd_validate(data_path, options);
        if (unfold->parsed()) return cmd_unfold(data_path, options);
        if (query->parsed()) return cmd_query(data_path, query_path, options);
        if (stats->parsed()) return cmd_stats(data_path, options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
