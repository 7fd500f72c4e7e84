// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each criterion carries its own time bound.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracle.hpp"
#include "rdfstar/query.hpp"
#include "rdfstar/reify.hpp"
#include "rdfstar/results.hpp"
#include "rdfstar/turtle.hpp"
#include "rdfstar/vocab.hpp"
#include "subprocess.hpp"

using namespace rdfstar;
using rdfstar::testsupport::run_command;
using rdfstar::testsupport::write_temp_file;

namespace {

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CriterionFailure(message);
}

std::string fixture(const std::string& name) {
    return std::string(RDFSTAR_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read fixture " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

StarTriple bob_age() {
    return StarTriple(StarTerm(Iri("http://example.org/bob")),
                      Iri("http://xmlns.com/foaf/0.1/age"),
                      StarTerm(Literal::typed("23", vocab::xsd_integer())));
}

StarGraph parsed_fixture() {
    ParseResult result = parse_turtlestar(read_file(fixture("bob.ttls")));
    require(result.ok(), "fixture must parse");
    return result.graph;
}

// 1. Turtle* parsing yields exactly the expected three triples with one
//    embedded triple.
void criterion_parse() {
    StarGraph g = parsed_fixture();
    require(g.size() == 3, "expected exactly 3 asserted triples, got " +
                               std::to_string(g.size()));
    require(trefs(g).size() == 1, "expected exactly one embedded triple");
    require(trefs(g).count(bob_age()) == 1, "embedded triple must be the age statement");

    StarGraph expected;
    expected.insert(StarTriple(StarTerm(Iri("http://example.org/bob")),
                               Iri("http://xmlns.com/foaf/0.1/name"),
                               StarTerm(Literal::str("Bob"))));
    expected.insert(StarTriple(StarTerm(bob_age()), Iri("http://purl.org/dc/terms/creator"),
                               StarTerm(Iri("http://example.com/crawlers#c1"))));
    expected.insert(StarTriple(StarTerm(bob_age()), Iri("http://purl.org/dc/terms/source"),
                               StarTerm(Iri("http://example.net/homepage-listing.html"))));
    require(g == expected, "parsed graph differs from the expected one");
}

// 2. Unfolding produces exactly the eight-triple reification graph.
void criterion_unfold() {
    StarGraph g = parsed_fixture();
    auto [plain, id] = unfold_graph(g);
    require(plain.size() == 8, "expected 8 unfolded triples, got " +
                                   std::to_string(plain.size()));
    StarTerm b{id.at(bob_age())};
    require(b == StarTerm(BlankNode("t1")), "deterministic label should be t1");

    PlainGraph expected;
    expected.insert(StarTriple(StarTerm(Iri("http://example.org/bob")),
                               Iri("http://xmlns.com/foaf/0.1/name"),
                               StarTerm(Literal::str("Bob"))));
    expected.insert(bob_age());
    expected.insert(StarTriple(b, vocab::rdf_type(), StarTerm(vocab::rdf_statement())));
    expected.insert(StarTriple(b, vocab::rdf_subject(), StarTerm(Iri("http://example.org/bob"))));
    expected.insert(StarTriple(b, vocab::rdf_predicate(),
                               StarTerm(Iri("http://xmlns.com/foaf/0.1/age"))));
    expected.insert(StarTriple(b, vocab::rdf_object(),
                               StarTerm(Literal::typed("23", vocab::xsd_integer()))));
    expected.insert(StarTriple(b, Iri("http://purl.org/dc/terms/creator"),
                               StarTerm(Iri("http://example.com/crawlers#c1"))));
    expected.insert(StarTriple(b, Iri("http://purl.org/dc/terms/source"),
                               StarTerm(Iri("http://example.net/homepage-listing.html"))));
    require(plain == expected, "unfolded graph differs from the expected reification");
}

// 3. Both query forms produce the single expected solution and agree.
void criterion_query_forms() {
    StarGraph g = parsed_fixture();
    query::QueryResult direct =
        query::execute_query(read_file(fixture("age_source.rqs")), g);
    query::QueryResult bound =
        query::execute_query(read_file(fixture("age_source_bind.rqs")), g);

    SolutionMapping expected;
    expected.bind(Variable("age"), StarTerm(Literal::typed("23", vocab::xsd_integer())));
    expected.bind(Variable("src"), StarTerm(Iri("http://example.net/homepage-listing.html")));

    require(direct.solutions.distinct_size() == 1, "direct form must have one solution");
    require(direct.solutions.card(expected) == 1, "direct form solution or cardinality wrong");
    require(bound.solutions.distinct_size() == 1, "BIND form must have one solution");
    require(bound.solutions.card(expected) == 1, "BIND form solution or cardinality wrong");
    require(direct.solutions == bound.solutions, "the two forms must be multiset-equal");
}

// 4. BGP evaluation equals the exhaustive enumeration oracle.
void criterion_oracle() {
    testgen::Rng rng(424242);
    int instances = 0;
    bool saw_max_triples = false, saw_depth2 = false, saw_three_patterns = false,
         saw_three_vars = false, saw_bnode = false;
    int nonempty = 0;
    double total_assignments = 0;
    while (instances < 200) {
        testgen::TripleGenOptions topt;
        topt.max_depth = rng.below(3);
        topt.iri_pool = 5 + rng.below(3);
        topt.predicate_pool = 2 + rng.below(2);
        // every tenth instance pins the size and depth bounds
        const bool maxed = instances % 10 == 9;
        if (maxed) topt.max_depth = 2;
        std::size_t triples = maxed ? 12 : 1 + rng.below(12);
        StarGraph g = testgen::gen_graph_exact(rng, triples, topt);

        testgen::PatternGenOptions popt;
        popt.max_patterns = 1 + rng.below(3);
        popt.max_vars = rng.below(4);
        popt.max_bnodes = rng.below(2);
        if (maxed) {
            popt.max_patterns = 3;
            popt.max_vars = 3;
            popt.max_bnodes = 1;
            popt.var_probability = 0.75;
        }

        std::vector<TriplePatternStar> bgp;
        bool fits = false;
        for (int attempt = 0; attempt < 6 && !fits; ++attempt) {
            bgp = testgen::gen_bgp(rng, g, popt);
            fits = oracle::enumeration_size(bgp, g) <= 600000.0;
            if (!fits && popt.max_vars > 0) --popt.max_vars;
        }
        if (!fits) continue;
        total_assignments += oracle::enumeration_size(bgp, g);

        SolutionMultiset expected = oracle::eval_bgp(bgp, g);
        SolutionMultiset actual = Evaluator(g).eval_bgp(bgp);
        if (!(actual == expected)) {
            std::string detail = "oracle mismatch on instance " + std::to_string(instances) +
                                 "\nexpected:\n" + expected.dump() + "actual:\n" + actual.dump();
            throw CriterionFailure(detail);
        }

        ++instances;
        if (!expected.empty()) ++nonempty;
        if (g.size() == 12) saw_max_triples = true;
        for (const auto& t : g.triples())
            if (t.depth() == 2) saw_depth2 = true;
        if (bgp.size() == 3) saw_three_patterns = true;
        std::set<Variable> vars;
        std::set<BlankNode> bnodes;
        for (const auto& tp : bgp) {
            auto vs = pattern_variables(tp);
            vars.insert(vs.begin(), vs.end());
            auto bs = pattern_bnodes(tp);
            bnodes.insert(bs.begin(), bs.end());
        }
        if (vars.size() == 3) saw_three_vars = true;
        if (bnodes.size() == 1) saw_bnode = true;
    }
    require(nonempty >= 50, "too few instances with solutions to be meaningful");
    require(total_assignments >= 1000000.0, "too little enumeration work to be meaningful");
    require(saw_max_triples, "bounds not exercised: no 12-triple graph");
    require(saw_depth2, "bounds not exercised: no depth-2 nesting");
    require(saw_three_patterns, "bounds not exercised: no 3-pattern BGP");
    require(saw_three_vars, "bounds not exercised: no 3-variable BGP");
    require(saw_bnode, "bounds not exercised: no blank-node BGP");
}

// 5. Algebra identities over random multisets.
void criterion_algebra_identities() {
    testgen::Rng rng(987654);
    for (int i = 0; i < 200; ++i) {
        SolutionMultiset m1 = testgen::gen_multiset(rng);
        SolutionMultiset m2 = testgen::gen_multiset(rng);
        SolutionMultiset m3 = testgen::gen_multiset(rng);
        require(left_outer_join(m1, m2) ==
                    multiset_union(join(m1, m2), multiset_difference(m1, m2)),
                "left outer join identity violated");
        require(join(m1, m2) == join(m2, m1), "join commutativity violated");
        require(multiset_union(m1, m2) == multiset_union(m2, m1),
                "union commutativity violated");
        require(join(join(m1, m2), m3) == join(m1, join(m2, m3)),
                "join associativity violated");
        require(multiset_union(multiset_union(m1, m2), m3) ==
                    multiset_union(m1, multiset_union(m2, m3)),
                "union associativity violated");
    }
}

// 6. Serializer round trip.
void criterion_round_trip() {
    testgen::Rng rng(13571357);
    for (int i = 0; i < 100; ++i) {
        testgen::TripleGenOptions topt;
        topt.max_depth = 5;
        topt.nasty_literals = true;
        topt.nest_probability = 0.4;
        StarGraph g = testgen::gen_graph(rng, 8, topt);
        std::map<std::string, Iri> prefixes;
        if (rng.chance(0.5)) prefixes.emplace("t", Iri("http://test.example/ns#"));
        std::string text = serialize_turtlestar(g, prefixes);
        ParseResult reparsed = parse_turtlestar(text);
        require(reparsed.ok(), "serialized graph failed to reparse:\n" + text);
        require(reparsed.graph == g, "round trip changed the graph:\n" + text);
    }
}

// 7. Reification correspondence: star solutions biject with solutions of
//    the reification-expanded BGP over the unfolded graph.
void criterion_reification_correspondence() {
    testgen::Rng rng(24682468);
    int with_embedded = 0;
    for (int i = 0; i < 100; ++i) {
        testgen::TripleGenOptions topt;
        topt.max_depth = 1 + rng.below(2);
        topt.allow_bnodes = false;
        StarGraph g = testgen::gen_graph(rng, 8, topt);

        testgen::PatternGenOptions popt;
        popt.allow_bnodes = false;
        popt.allow_predicate_vars = false;
        popt.keep_nested_probability = 0.75;
        std::vector<TriplePatternStar> bgp = testgen::gen_bgp(rng, g, popt);

        SolutionMultiset star = Evaluator(g).eval_bgp(bgp);

        auto [plain, id] = unfold_graph(g);
        StarGraph plain_star = plain.to_star();
        plain_star.freeze();
        oracle::ReificationExpansion expansion = oracle::expand_reification(bgp);
        SolutionMultiset reified = Evaluator(plain_star).eval_bgp(expansion.patterns);

        std::set<Variable> original_vars;
        for (const auto& tp : bgp) {
            auto vs = pattern_variables(tp);
            original_vars.insert(vs.begin(), vs.end());
        }
        SolutionMultiset projected = project(reified, original_vars);

        SolutionMultiset mapped;
        for (const auto& [eta, card] : star.entries())
            mapped.add(oracle::map_through_assignment(eta, id), card);

        require(reified.distinct_size() == star.distinct_size(),
                "solution counts differ between the star and reified sides");
        for (const auto& [eta, card] : star.entries())
            require(card == 1, "star-side cardinality must be 1 for blank-node-free BGPs");
        for (const auto& [eta, card] : reified.entries())
            require(card == 1, "reified-side cardinality must be 1");
        require(mapped == projected,
                "solutions do not correspond under the blank node assignment");

        bool has_embedded = false;
        for (const auto& tp : bgp)
            if (tp.depth() > 0) has_embedded = true;
        if (has_embedded && !star.empty()) ++with_embedded;
    }
    require(with_embedded >= 20, "too few instances exercised embedded patterns");
}

// 8. Negative cases: positioned diagnostics and the exit-code contract.
void criterion_negative_cases() {
    std::string cli = RDFSTAR_CLI_PATH;

    auto ok = run_command(cli + " validate " + fixture("bob.ttls"));
    require(ok.exit_code == 0, "well-formed data must validate with exit 0");
    auto missing = run_command(cli + " validate /nonexistent/file.ttls");
    require(missing.exit_code == 2, "missing files must exit 2");

    std::string lit_subject = write_temp_file(
        "neg_literal_subject.ttls", "@prefix : <urn:t:> .\n<<\"x\" :p :o>> :q :z .\n");
    auto a = run_command(cli + " validate " + lit_subject);
    require(a.exit_code == 1, "literal embedded subject must exit 1");
    require(a.errors.find(":2:3:") != std::string::npos,
            "literal embedded subject must carry its position, got: " + a.errors);

    std::string bnode_query = write_temp_file(
        "neg_bnode.rqs", "SELECT * WHERE { <<_:b <urn:p> ?x>> <urn:q> ?y }\n");
    auto b = run_command(cli + " query " + fixture("bob.ttls") + " " + bnode_query);
    require(b.exit_code == 1, "blank node in embedded pattern must exit 1");
    require(b.errors.find("1:20") != std::string::npos,
            "blank node rejection must carry its position, got: " + b.errors);
    require(b.errors.find("blank node") != std::string::npos,
            "diagnostic must name the blank node problem");

    std::string bind_in_scope = write_temp_file(
        "neg_scope.rqs",
        "SELECT * WHERE { ?t <urn:p> 1 . BIND(<<?a <urn:q> ?b>> AS ?t) }\n");
    auto c = run_command(cli + " query " + fixture("bob.ttls") + " " + bind_in_scope);
    require(c.exit_code == 1, "BIND target already in scope must exit 1");
    require(c.errors.find("scope error") != std::string::npos,
            "scope violations must be labeled, got: " + c.errors);
    require(c.errors.find("1:") != std::string::npos, "scope violations carry a position");

    std::string path_query = write_temp_file(
        "neg_path.rqs", "SELECT ?n WHERE { ?x <urn:knows>/<urn:name> ?n }\n");
    auto d = run_command(cli + " query " + fixture("bob.ttls") + " " + path_query);
    require(d.exit_code == 1, "property paths must exit 1");
    require(d.errors.find("unsupported") != std::string::npos,
            "property paths must be reported as unsupported, got: " + d.errors);
    require(d.errors.find("1:") != std::string::npos, "path rejection carries a position");
}

struct Criterion {
    int number;
    std::string label;
    double time_limit_seconds;
    std::function<void()> run;
};

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "Turtle* parsing of the embedded-triple document", 1.0, criterion_parse},
        {2, "unfolding to the eight-triple reification graph", 1.0, criterion_unfold},
        {3, "both query forms yield the single expected solution", 1.0, criterion_query_forms},
        {4, "BGP evaluation equals the brute-force oracle (200+ instances)", 60.0,
         criterion_oracle},
        {5, "multiset algebra identities (200+ instances)", 10.0, criterion_algebra_identities},
        {6, "serializer round trip (100+ graphs)", 10.0, criterion_round_trip},
        {7, "reification correspondence (100+ instances)", 30.0,
         criterion_reification_correspondence},
        {8, "negative grammar and scope cases with exit codes", 30.0,
         criterion_negative_cases},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            failure = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && elapsed > criterion.time_limit_seconds)
            failure = "time limit exceeded: " + std::to_string(elapsed) + "s > " +
                      std::to_string(criterion.time_limit_seconds) + "s";
        if (failure.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", criterion.number,
                        criterion.label.c_str(), elapsed);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %d: %s (%.2fs)\n       %s\n", criterion.number,
                        criterion.label.c_str(), elapsed, failure.c_str());
        }
    }
    if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
