#ifndef RDFSTAR_TESTS_GENERATORS_HPP
#define RDFSTAR_TESTS_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "rdfstar/algebra.hpp"
#include "rdfstar/graph.hpp"
#include "rdfstar/pattern.hpp"
#include "rdfstar/term.hpp"
#include "rdfstar/vocab.hpp"

// Seeded random data for the property tests: terms, triples, graphs,
// patterns abstracted from graphs, and solution multisets.

namespace rdfstar::testgen {

struct Rng {
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine);
    }
    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine);
    }
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(engine) < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

    std::mt19937_64 engine;
};

inline Iri gen_iri(Rng& rng, std::size_t pool = 8) {
    return Iri("http://test.example/ns#r" + std::to_string(rng.below(pool)));
}

inline Iri gen_predicate(Rng& rng, std::size_t pool = 4) {
    return Iri("http://test.example/ns#p" + std::to_string(rng.below(pool)));
}

inline BlankNode gen_bnode(Rng& rng, std::size_t pool = 3) {
    return BlankNode("d" + std::to_string(rng.below(pool)));
}

inline Literal gen_literal(Rng& rng) {
    switch (rng.below(4)) {
        case 0: return Literal::str("v" + std::to_string(rng.below(4)));
        case 1: return Literal::typed(std::to_string(rng.below(50)), vocab::xsd_integer());
        case 2: return Literal::lang_tagged("hello", rng.chance(0.5) ? "en" : "de");
        default: return Literal::typed(std::to_string(rng.below(9)) + ".5", vocab::xsd_decimal());
    }
}

// Wilder strings for the serializer round-trip: escapes, quotes, unicode.
inline Literal gen_nasty_literal(Rng& rng) {
    static const std::vector<std::string> lexicals = {
        "",
        "plain",
        "with \"quotes\" and 'ticks'",
        "line\nbreak\ttab\\backslash",
        "caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x8C\x8D",
        "trailing space ",
        "\x01control",
        "123",
        "1.5e3",
    };
    const std::string& lex = rng.pick(lexicals);
    switch (rng.below(4)) {
        case 0: return Literal::str(lex);
        case 1: return Literal::lang_tagged(lex, rng.chance(0.5) ? "en" : "en-GB");
        case 2: return Literal::typed(lex, Iri("http://test.example/dt#d" +
                                               std::to_string(rng.below(3))));
        default: return Literal::typed(std::to_string(rng.below(100)), vocab::xsd_integer());
    }
}

struct TripleGenOptions {
    std::size_t max_depth = 2;
    bool allow_bnodes = true;
    bool nasty_literals = false;
    std::size_t iri_pool = 8;
    std::size_t predicate_pool = 4;
    double nest_probability = 0.35;
};

inline StarTriple gen_triple(Rng& rng, const TripleGenOptions& options, std::size_t depth = 0);

inline StarTerm gen_subject_term(Rng& rng, const TripleGenOptions& options, std::size_t depth) {
    if (depth < options.max_depth && rng.chance(options.nest_probability))
        return StarTerm(gen_triple(rng, options, depth + 1));
    if (options.allow_bnodes && rng.chance(0.2)) return StarTerm(gen_bnode(rng));
    return StarTerm(gen_iri(rng, options.iri_pool));
}

inline StarTerm gen_object_term(Rng& rng, const TripleGenOptions& options, std::size_t depth) {
    if (depth < options.max_depth && rng.chance(options.nest_probability))
        return StarTerm(gen_triple(rng, options, depth + 1));
    switch (rng.below(3)) {
        case 0:
            return StarTerm(options.nasty_literals ? gen_nasty_literal(rng) : gen_literal(rng));
        case 1:
            if (options.allow_bnodes) return StarTerm(gen_bnode(rng));
            [[fallthrough]];
        default: return StarTerm(gen_iri(rng, options.iri_pool));
    }
}

inline StarTriple gen_triple(Rng& rng, const TripleGenOptions& options, std::size_t depth) {
    return StarTriple(gen_subject_term(rng, options, depth),
                      gen_predicate(rng, options.predicate_pool),
                      gen_object_term(rng, options, depth));
}

inline StarGraph gen_graph_exact(Rng& rng, std::size_t n, const TripleGenOptions& options) {
    StarGraph g;
    for (std::size_t attempts = 0; g.size() < n && attempts < 6 * n; ++attempts)
        g.insert(gen_triple(rng, options));
    g.freeze();
    return g;
}

inline StarGraph gen_graph(Rng& rng, std::size_t max_triples, const TripleGenOptions& options) {
    return gen_graph_exact(rng, rng.between(1, max_triples), options);
}

struct PatternGenOptions {
    std::size_t max_vars = 3;
    std::size_t max_bnodes = 1;
    std::size_t max_patterns = 3;
    double var_probability = 0.4;
    double keep_nested_probability = 0.6;
    bool allow_bnodes = true;
    bool allow_predicate_vars = true;
};

struct PatternAbstractor {
    Rng& rng;
    const PatternGenOptions& options;
    std::vector<Variable> vars;
    std::vector<BlankNode> bnodes;
    std::size_t vars_used = 0;
    std::size_t bnodes_used = 0;

    PatternAbstractor(Rng& r, const PatternGenOptions& o) : rng(r), options(o) {
        for (std::size_t i = 0; i < o.max_vars; ++i) vars.emplace_back("v" + std::to_string(i));
        for (std::size_t i = 0; i < o.max_bnodes; ++i)
            bnodes.emplace_back("q" + std::to_string(i));
    }

    PatternTerm abstract_var_or(const StarTerm& value, bool top_level) {
        if (rng.chance(options.var_probability) && options.max_vars > 0) {
            // reusing variables creates join conditions between patterns
            std::size_t i = rng.below(std::min(vars_used + 1, vars.size()));
            vars_used = std::max(vars_used, i + 1);
            return PatternTerm(vars[i]);
        }
        if (top_level && options.allow_bnodes && options.max_bnodes > 0 && rng.chance(0.15)) {
            std::size_t i = rng.below(std::min(bnodes_used + 1, bnodes.size()));
            bnodes_used = std::max(bnodes_used, i + 1);
            return PatternTerm(bnodes[i]);
        }
        return PatternTerm(value);
    }

    // Nested patterns cannot mention blank nodes, so descent into an
    // embedded triple is only possible when its direct positions are not
    // blank nodes (deeper ones can stay inside kept ground values).
    static bool descent_blocked(const StarTerm& value) {
        return value.triple().subject().is_bnode() || value.triple().object().is_bnode();
    }

    PatternTerm abstract_position(const StarTerm& value, bool top_level) {
        if (value.is_triple() && !descent_blocked(value) &&
            rng.chance(options.keep_nested_probability)) {
            // descend into the embedded triple; nested patterns are
            // blank-node-free, so only variables abstract there
            const StarTriple& t = value.triple();
            PatternTerm s = abstract_position_nested(t.subject());
            PatternTerm p = options.allow_predicate_vars && rng.chance(0.2) && options.max_vars > 0
                                ? abstract_var_or(StarTerm(t.predicate()), false)
                                : PatternTerm(t.predicate());
            if (!p.is_variable() && !p.is_iri()) p = PatternTerm(t.predicate());
            PatternTerm o = abstract_position_nested(t.object());
            return PatternTerm::embedded(TriplePatternStar(s, p, o));
        }
        return abstract_var_or(value, top_level);
    }

    PatternTerm abstract_position_nested(const StarTerm& value) {
        if (value.is_triple() && !descent_blocked(value) &&
            rng.chance(options.keep_nested_probability))
            return abstract_position(value, false);
        if (rng.chance(options.var_probability) && options.max_vars > 0) {
            std::size_t i = rng.below(std::min(vars_used + 1, vars.size()));
            vars_used = std::max(vars_used, i + 1);
            return PatternTerm(vars[i]);
        }
        return PatternTerm(value);
    }

    TriplePatternStar abstract_triple(const StarTriple& t) {
        PatternTerm s = abstract_position(t.subject(), true);
        PatternTerm p = options.allow_predicate_vars && rng.chance(0.15) && options.max_vars > 0
                            ? abstract_var_or(StarTerm(t.predicate()), false)
                            : PatternTerm(t.predicate());
        if (!p.is_variable() && !p.is_iri()) p = PatternTerm(t.predicate());
        PatternTerm o = abstract_position(t.object(), true);
        return TriplePatternStar(s, p, o);
    }
};

/// Patterns sampled from the graph's triples (so that matches exist) with
/// positions abstracted to variables and, at the top level, blank nodes.
inline std::vector<TriplePatternStar> gen_bgp(Rng& rng, const StarGraph& g,
                                              const PatternGenOptions& options) {
    std::vector<StarTriple> pool(g.triples().begin(), g.triples().end());
    for (const StarTriple& t : g.embedded()) pool.push_back(t);
    PatternAbstractor abstractor(rng, options);
    std::vector<TriplePatternStar> out;
    std::size_t n = rng.between(1, options.max_patterns);
    for (std::size_t i = 0; i < n; ++i) {
        StarTriple base = rng.pick(pool);
        TriplePatternStar tp = abstractor.abstract_triple(base);
        if (rng.chance(0.1)) {
            // a pattern that probably matches nothing
            tp = TriplePatternStar(tp.subject(), PatternTerm(Iri("http://test.example/ns#none")),
                                   tp.object());
        }
        out.push_back(std::move(tp));
    }
    return out;
}

inline SolutionMapping gen_mapping(Rng& rng, std::size_t max_vars = 4) {
    static const std::vector<std::string> names = {"a", "b", "c", "d"};
    SolutionMapping eta;
    for (std::size_t i = 0; i < std::min(max_vars, names.size()); ++i) {
        if (!rng.chance(0.6)) continue;
        switch (rng.below(3)) {
            case 0: eta.bind(Variable(names[i]), StarTerm(gen_iri(rng, 3))); break;
            case 1: eta.bind(Variable(names[i]), StarTerm(gen_literal(rng))); break;
            default: {
                TripleGenOptions topt;
                topt.max_depth = 1;
                eta.bind(Variable(names[i]), StarTerm(gen_triple(rng, topt)));
            }
        }
    }
    return eta;
}

inline SolutionMultiset gen_multiset(Rng& rng, std::size_t max_mappings = 5) {
    SolutionMultiset m;
    std::size_t n = rng.below(max_mappings + 1);
    for (std::size_t i = 0; i < n; ++i) m.add(gen_mapping(rng), rng.between(1, 3));
    return m;
}

} // namespace rdfstar::testgen

#endif
