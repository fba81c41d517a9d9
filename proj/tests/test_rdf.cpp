#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "seanet/errors.hpp"
#include "seanet/kg.hpp"
#include "seanet/netsim.hpp"
#include "seanet/ontology.hpp"
#include "seanet/rdf.hpp"

using namespace seanet;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;

namespace {

Triple fragment_triple() {
    return Triple(Term::iri("http://example.org/switch1"),
                  Term::iri("http://purl.org/toco/hasPort"),
                  Term::iri("http://example.org/port1"));
}

} // namespace

TEST_CASE("term construction enforces the grammar") {
    CHECK_THROWS_AS(Term::iri(""), std::invalid_argument);
    CHECK_THROWS_AS(Term::iri("http://x/a b"), std::invalid_argument);
    CHECK_THROWS_AS(Term::iri("<http://x/a>"), std::invalid_argument);
    CHECK_THROWS_AS(Term::literal("x", std::string("not an iri ")), std::invalid_argument);
    CHECK(Term::literal("anything goes \n \" \\").is_literal());

    CHECK(Term::iri("http://x/a") == Term::iri("http://x/a"));
    CHECK(Term::iri("http://x/a") != Term::literal("http://x/a"));
    CHECK(Term::literal("1") != Term::literal("1", std::string("http://x/int")));
}

TEST_CASE("triple positions are checked") {
    CHECK_THROWS_AS(Triple(Term::literal("x"), Term::iri("http://x/p"), Term::literal("y")),
                    std::invalid_argument);
    CHECK_THROWS_AS(Triple(Term::iri("http://x/s"), Term::literal("p"), Term::literal("y")),
                    std::invalid_argument);
}

TEST_CASE("insert is idempotent set insertion") {
    Graph g;
    CHECK(g.insert(fragment_triple()));
    CHECK(g.size() == 1);
    CHECK_FALSE(g.insert(fragment_triple()));
    CHECK(g.size() == 1);
}

TEST_CASE("remove reports presence and restores emptiness") {
    Graph g;
    g.insert(fragment_triple());
    CHECK(g.remove(fragment_triple()));
    CHECK(g.size() == 0);
    CHECK_FALSE(g.remove(fragment_triple()));
    CHECK(g.match(std::nullopt, fragment_triple().predicate, std::nullopt).empty());
}

TEST_CASE("match on the knowledge fragment") {
    Graph g;
    g.insert(fragment_triple());
    g.insert(Triple(Term::iri("http://example.org/link1"), Term::iri("http://purl.org/toco/from"),
                    Term::iri("http://example.org/port1")));

    auto hits = g.match(std::nullopt, Term::iri("http://purl.org/toco/hasPort"),
                        Term::iri("http://example.org/port1"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == fragment_triple());

    Graph empty;
    CHECK(empty.match(std::nullopt, std::nullopt, std::nullopt).empty());
    CHECK(empty.match(fragment_triple().subject, std::nullopt, std::nullopt).empty());
}

TEST_CASE("fully bound match returns exactly the present triple") {
    oracles::Rng rng(7);
    auto pool = oracles::make_pool(8, 5, 10);
    auto [g, mirror] = oracles::random_graph(rng, pool, 200);
    for (const Triple& t : mirror) {
        auto hits = g.match(t.subject, t.predicate, t.object);
        auto expected = oracles::scan_match(mirror, t.subject, t.predicate, t.object);
        CHECK(hits == expected);
        REQUIRE(hits.size() == 1);
    }
}

TEST_CASE("index coherence against the scan oracle across all 8 shapes") {
    oracles::Rng rng(42);
    for (int round = 0; round < 30; ++round) {
        auto pool = oracles::make_pool(6 + rng() % 10, 3 + rng() % 5, 8 + rng() % 12);
        auto [g, mirror] = oracles::random_graph(rng, pool, 500);

        // removals must keep every index coherent too
        std::size_t removals = mirror.size() / 10;
        for (std::size_t i = 0; i < removals && !mirror.empty(); ++i) {
            std::size_t at = rng() % mirror.size();
            CHECK(g.remove(mirror[at]));
            mirror.erase(mirror.begin() + static_cast<std::ptrdiff_t>(at));
        }

        for (unsigned shape = 0; shape < 8; ++shape) {
            for (int probe_round = 0; probe_round < 4; ++probe_round) {
                auto probe = oracles::random_probe(rng, pool, mirror, shape);
                CHECK(g.match(probe.s, probe.p, probe.o) ==
                      oracles::scan_match(mirror, probe.s, probe.p, probe.o));
            }
        }
    }
}

TEST_CASE("match and serialization ignore insertion order") {
    oracles::Rng rng(11);
    auto pool = oracles::make_pool(10, 4, 12);
    auto [g1, mirror] = oracles::random_graph(rng, pool, 300);

    std::vector<Triple> shuffled = mirror;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Graph g2;
    for (const Triple& t : shuffled) g2.insert(t);

    CHECK(g1 == g2);
    CHECK(rdf::serialize_ntriples(g1) == rdf::serialize_ntriples(g2));
    auto probe = oracles::random_probe(rng, pool, mirror, 2);
    CHECK(g1.match(probe.s, probe.p, probe.o) == g2.match(probe.s, probe.p, probe.o));
}

TEST_CASE("serialization golden line") {
    Graph g;
    CHECK(rdf::serialize_ntriples(g).empty());
    g.insert(fragment_triple());
    CHECK(rdf::serialize_ntriples(g) ==
          "<http://example.org/switch1> <http://purl.org/toco/hasPort> "
          "<http://example.org/port1> .\n");
}

TEST_CASE("literal escaping round-trips") {
    Graph g;
    g.insert(Triple(Term::iri("http://x/s"), Term::iri("http://x/p"),
                    Term::literal("a\"b\\c\nd\re")));
    g.insert(Triple(Term::iri("http://x/s"), Term::iri("http://x/p"),
                    Term::literal("123.001", std::string("http://www.w3.org/2001/XMLSchema#decimal"))));
    Graph parsed = rdf::parse_ntriples(rdf::serialize_ntriples(g));
    CHECK(parsed == g);
}

TEST_CASE("serialize-parse-serialize is the identity on random graphs") {
    oracles::Rng rng(3);
    for (int round = 0; round < 25; ++round) {
        auto pool = oracles::make_pool(6 + rng() % 8, 4, 10 + rng() % 8);
        auto [g, mirror] = oracles::random_graph(rng, pool, 250);
        std::string first = rdf::serialize_ntriples(g);
        Graph parsed = rdf::parse_ntriples(first);
        CHECK(parsed == g);
        CHECK(rdf::serialize_ntriples(parsed) == first);
    }
}

TEST_CASE("parser rejects malformed lines with their line number") {
    CHECK(rdf::parse_ntriples("").size() == 0);
    CHECK(rdf::parse_ntriples("\n  \n").size() == 0);

    try {
        rdf::parse_ntriples("<http://x/s> <http://x/p> <http://x/o> .\n"
                            "<http://x/s> <http://x/p> <http://x/o>\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    CHECK_THROWS_AS(rdf::parse_ntriples("<http://x/s> <http://x/p> \"bad\\q\" .\n"), ParseError);
    CHECK_THROWS_AS(rdf::parse_ntriples("\"lit\" <http://x/p> <http://x/o> .\n"), ParseError);
    CHECK_THROWS_AS(rdf::parse_ntriples("<http://x/s> <http://x/p> \"unterminated .\n"),
                    ParseError);
    CHECK_THROWS_AS(rdf::parse_ntriples("junk\n"), ParseError);
}

TEST_CASE("inserting a generated snapshot triple by triple matches the schema count") {
    netsim::Network net = netsim::build_topology(
        netsim::TopoSpec{netsim::TopoSpec::Shape::Single, 5, 1, 1, 2, false});
    kg::Snapshot snap = kg::snapshot(net);

    Graph g;
    for (const Triple& t : snap.graph.triples()) CHECK(g.insert(t));
    CHECK(g.size() == oracles::count_snapshot_triples(net));
}
