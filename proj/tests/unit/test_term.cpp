#include <doctest.h>

#include "generators.hpp"
#include "rdfstar/graph.hpp"
#include "rdfstar/term.hpp"
#include "rdfstar/vocab.hpp"

using namespace rdfstar;

namespace {

StarTriple bob_name() {
    return StarTriple(StarTerm(Iri("http://example.org/bob")),
                      Iri("http://xmlns.com/foaf/0.1/name"), StarTerm(Literal::str("Bob")));
}

StarTriple bob_age() {
    return StarTriple(StarTerm(Iri("http://example.org/bob")),
                      Iri("http://xmlns.com/foaf/0.1/age"),
                      StarTerm(Literal::typed("23", vocab::xsd_integer())));
}

StarTriple age_source() {
    return StarTriple(StarTerm(bob_age()), Iri("http://purl.org/dc/terms/source"),
                      StarTerm(Iri("http://example.net/homepage-listing.html")));
}

} // namespace

TEST_CASE("term validation") {
    CHECK_THROWS_AS(Iri(""), std::invalid_argument);
    CHECK_THROWS_AS(Iri("http://x.org/a b"), std::invalid_argument);
    CHECK_THROWS_AS(Iri("<http://x.org/>"), std::invalid_argument);
    CHECK_THROWS_AS(BlankNode(""), std::invalid_argument);
    CHECK_THROWS_AS(BlankNode("-x"), std::invalid_argument);
    CHECK_THROWS_AS(BlankNode("x."), std::invalid_argument);
    CHECK_NOTHROW(BlankNode("a.b"));
    CHECK_NOTHROW(BlankNode("0x"));
    CHECK_THROWS_AS(Literal::lang_tagged("x", ""), std::invalid_argument);
    CHECK_THROWS_AS(Literal::lang_tagged("x", "e n"), std::invalid_argument);
    CHECK(Literal::lang_tagged("x", "EN-GB").language() == "en-gb");
    CHECK_THROWS_AS(Literal::typed("x", vocab::rdf_lang_string()), std::invalid_argument);
    CHECK(Literal::str("x").datatype() == vocab::xsd_string());
}

TEST_CASE("literal subjects are rejected") {
    CHECK_THROWS_AS(
        StarTriple(StarTerm(Literal::str("x")), Iri("http://p.org/p"), StarTerm(Iri("http://o.org/o"))),
        std::invalid_argument);
}

TEST_CASE("nesting depth") {
    CHECK(nesting_depth(bob_name()) == 0);
    CHECK(nesting_depth(age_source()) == 1);

    StarTriple inner(StarTerm(Iri("urn:a")), Iri("urn:p"), StarTerm(Iri("urn:b")));
    StarTriple mid(StarTerm(inner), Iri("urn:q"), StarTerm(Iri("urn:c")));
    StarTriple outer(StarTerm(mid), Iri("urn:r"), StarTerm(Iri("urn:d")));
    CHECK(nesting_depth(outer) == 2);

    // depth is the maximum over both positions
    StarTriple both(StarTerm(inner), Iri("urn:s"), StarTerm(mid));
    CHECK(nesting_depth(both) == 2);
}

TEST_CASE("nesting depth limit is enforced") {
    set_max_nesting_depth(3);
    StarTriple t(StarTerm(Iri("urn:a")), Iri("urn:p"), StarTerm(Iri("urn:b")));
    for (int i = 0; i < 3; ++i) t = StarTriple(StarTerm(t), Iri("urn:p"), StarTerm(Iri("urn:b")));
    CHECK_THROWS_AS(StarTriple(StarTerm(t), Iri("urn:p"), StarTerm(Iri("urn:b"))),
                    NestingDepthError);
    set_max_nesting_depth(128);
    CHECK_NOTHROW(StarTriple(StarTerm(t), Iri("urn:p"), StarTerm(Iri("urn:b"))));
}

TEST_CASE("terms_plus of a triple") {
    auto plain = terms_plus(bob_name());
    CHECK(plain.size() == 3);
    CHECK(plain.count(StarTerm(Iri("http://example.org/bob"))) == 1);
    CHECK(plain.count(StarTerm(Literal::str("Bob"))) == 1);

    StarTriple creator(StarTerm(bob_age()), Iri("http://purl.org/dc/terms/creator"),
                       StarTerm(Iri("http://example.com/crawlers#c1")));
    auto nested = terms_plus(creator);
    // the embedded triple itself plus its own three terms plus the outer
    // predicate and object
    CHECK(nested.size() == 6);
    CHECK(nested.count(StarTerm(bob_age())) == 1);
    CHECK(nested.count(StarTerm(Iri("http://example.org/bob"))) == 1);
    CHECK(nested.count(StarTerm(Literal::typed("23", vocab::xsd_integer()))) == 1);

    StarTriple inner(StarTerm(Iri("urn:a")), Iri("urn:p"), StarTerm(Iri("urn:b")));
    StarTriple mid(StarTerm(inner), Iri("urn:q"), StarTerm(Iri("urn:c")));
    StarTriple outer(StarTerm(mid), Iri("urn:r"), StarTerm(Iri("urn:d")));
    // 3 outer positions + the closure of the nested triples
    CHECK(terms_plus(outer).size() == 9);
}

TEST_CASE("deep equality is structural") {
    CHECK(age_source() == age_source());
    CHECK(StarTerm(bob_age()) == StarTerm(bob_age()));
    StarTriple other(StarTerm(bob_name()), Iri("http://purl.org/dc/terms/source"),
                     StarTerm(Iri("http://example.net/homepage-listing.html")));
    CHECK(age_source() != other);
}

TEST_CASE("equality is an equivalence relation on random triples") {
    testgen::Rng rng(20240817);
    testgen::TripleGenOptions options;
    options.max_depth = 3;
    for (int i = 0; i < 200; ++i) {
        StarTriple a = testgen::gen_triple(rng, options);
        StarTriple b = testgen::gen_triple(rng, options);
        StarTriple c = testgen::gen_triple(rng, options);
        CHECK(a == a);
        CHECK((a == b) == (b == a));
        if (a == b && b == c) CHECK(a == c);
        // the total order agrees with equality
        CHECK((compare(a, b) == 0) == (a == b));
        if (a != b) CHECK(compare(a, b) == -compare(b, a));
    }
}

TEST_CASE("terms_plus size bounds") {
    testgen::Rng rng(7);
    testgen::TripleGenOptions options;
    options.max_depth = 3;
    for (int i = 0; i < 100; ++i) {
        StarTriple t = testgen::gen_triple(rng, options);
        std::size_t nodes = 1;
        std::vector<const StarTriple*> stack{&t};
        while (!stack.empty()) {
            const StarTriple* cur = stack.back();
            stack.pop_back();
            for (const StarTerm* pos : {&cur->subject(), &cur->object()})
                if (pos->is_triple()) {
                    ++nodes;
                    stack.push_back(&pos->triple());
                }
        }
        auto tp = terms_plus(t);
        CHECK(tp.size() >= 1);
        CHECK(tp.size() <= 3 * nodes);
        CHECK((nesting_depth(t) == 0) == (nodes == 1));
    }
}
