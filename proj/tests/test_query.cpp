#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "seanet/errors.hpp"
#include "seanet/kg.hpp"
#include "seanet/netsim.hpp"
#include "seanet/ontology.hpp"
#include "seanet/query.hpp"

using namespace seanet;
using ontology::vocab;
using query::BindingSet;
using query::Query;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;

namespace {

const char* kWhichSwitch =
    "SELECT ?sw WHERE { ?sw net:hasPort ?p . ?l net:from ?p . ?l net:to ?q . "
    "ex:h1 net:hasPort ?q }";

Graph three_typed_hosts() {
    Graph g;
    for (const char* h : {"host1", "host3", "host5"})
        g.insert(Triple(vocab().expand(std::string("ex:") + h), vocab().rdf_type,
                        vocab().host_class));
    return g;
}

} // namespace

TEST_CASE("the which-switch question parses into a four-pattern query") {
    Query q = query::parse_query(kWhichSwitch);
    CHECK(q.patterns.size() == 4);
    CHECK(q.projection == std::vector<std::string>{"sw"});
    CHECK_FALSE(q.distinct);
    CHECK_FALSE(q.wildcard);
}

TEST_CASE("empty basic graph pattern returns one empty row") {
    Query q = query::parse_query("SELECT * WHERE { }");
    CHECK(q.patterns.empty());
    BindingSet result = query::evaluate(q, Graph{});
    CHECK(result.variables.empty());
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].empty());
}

TEST_CASE("syntax and prefix errors") {
    CHECK_THROWS_AS(query::parse_query("SELECT ?x WHERE { ?x net:hasPort ?y "), SyntaxError);
    CHECK_THROWS_AS(query::parse_query("SELECT WHERE { }"), SyntaxError);
    CHECK_THROWS_AS(query::parse_query("SELECT ?x WHERE { ?x bogus:p ?y }"), UnknownPrefix);
    // projected/filter variables must occur in some pattern
    CHECK_THROWS_AS(query::parse_query("SELECT ?z WHERE { ?x net:hasPort ?y }"), SyntaxError);
    CHECK_THROWS_AS(
        query::parse_query("SELECT ?x WHERE { ?x net:hasPort ?y . FILTER(?z != ?x) }"),
        SyntaxError);
    // literals cannot stand in subject or predicate position
    CHECK_THROWS_AS(query::parse_query("SELECT ?x WHERE { \"lit\" net:hasPort ?x }"),
                    SyntaxError);
}

TEST_CASE("local prefixes extend and override the defaults") {
    Query q = query::parse_query(
        "PREFIX my: <http://mine.example/> PREFIX net: <http://other.example/> "
        "SELECT ?x WHERE { ?x my:p net:q }");
    REQUIRE(q.patterns.size() == 1);
    CHECK(std::get<Term>(q.patterns[0].p) == Term::iri("http://mine.example/p"));
    CHECK(std::get<Term>(q.patterns[0].o) == Term::iri("http://other.example/q"));
}

TEST_CASE("literals parse with escapes and datatypes") {
    Query q = query::parse_query(
        "SELECT ?x WHERE { ?x net:hasMAC \"a\\\"b\\\\c\" . "
        "?x net:portNumber \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> }");
    CHECK(std::get<Term>(q.patterns[0].o) == Term::literal("a\"b\\c"));
    CHECK(std::get<Term>(q.patterns[1].o) ==
          Term::literal("5", std::string("http://www.w3.org/2001/XMLSchema#integer")));
}

TEST_CASE("which switch is h1 connected to, over a single(2) snapshot") {
    auto net = netsim::build_topology(
        netsim::TopoSpec{netsim::TopoSpec::Shape::Single, 2, 1, 1, 2, false});
    Graph g = kg::snapshot(net).graph;

    BindingSet result = query::evaluate(query::parse_query(kWhichSwitch), g);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][0] == kg::element_iri("s1"));

    // links are stored directionally; the mirrored orientation finds nothing,
    // so callers union both orientations
    BindingSet mirrored = query::evaluate(
        query::parse_query("SELECT ?sw WHERE { ?sw net:hasPort ?p . ?l net:to ?p . "
                           "?l net:from ?q . ex:h1 net:hasPort ?q }"),
        g);
    CHECK(mirrored.rows.empty());
}

TEST_CASE("patterns over absent subjects evaluate to empty") {
    auto net = netsim::build_topology(
        netsim::TopoSpec{netsim::TopoSpec::Shape::Single, 2, 1, 1, 2, false});
    Graph g = kg::snapshot(net).graph;
    BindingSet result = query::evaluate(
        query::parse_query("SELECT ?p WHERE { ex:nonexistent net:hasPort ?p }"), g);
    CHECK(result.rows.empty());
}

TEST_CASE("chained inequality filters keep host1 only") {
    Graph g = three_typed_hosts();
    BindingSet result = query::evaluate(
        query::parse_query("SELECT ?h WHERE { ?h rdf:type net:Host . "
                           "FILTER(?h != ex:host3) FILTER(?h != ex:host5) }"),
        g);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][0] == vocab().expand("ex:host1"));
}

TEST_CASE("distinct collapses duplicate rows") {
    Graph g;
    auto s1 = Term::iri("http://x/s1");
    auto s2 = Term::iri("http://x/s2");
    auto p = Term::iri("http://x/p");
    g.insert(Triple(s1, p, Term::literal("v")));
    g.insert(Triple(s2, p, Term::literal("v")));

    BindingSet plain =
        query::evaluate(query::parse_query("SELECT ?v WHERE { ?s <http://x/p> ?v }"), g);
    CHECK(plain.rows.size() == 2);
    BindingSet distinct = query::evaluate(
        query::parse_query("SELECT DISTINCT ?v WHERE { ?s <http://x/p> ?v }"), g);
    CHECK(distinct.rows.size() == 1);
}

TEST_CASE("repeated variables within one pattern require equal bindings") {
    Graph g;
    auto a = Term::iri("http://x/a");
    auto b = Term::iri("http://x/b");
    auto p = Term::iri("http://x/p");
    g.insert(Triple(a, p, a));
    g.insert(Triple(a, p, b));
    BindingSet result =
        query::evaluate(query::parse_query("SELECT ?x WHERE { ?x <http://x/p> ?x }"), g);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0][0] == a);
}

TEST_CASE("filter comparing two variables") {
    Graph g;
    auto p = Term::iri("http://x/p");
    g.insert(Triple(Term::iri("http://x/a"), p, Term::iri("http://x/a")));
    g.insert(Triple(Term::iri("http://x/a"), p, Term::iri("http://x/b")));
    BindingSet eq = query::evaluate(
        query::parse_query("SELECT ?y WHERE { ?x <http://x/p> ?y . FILTER(?x = ?y) }"), g);
    REQUIRE(eq.rows.size() == 1);
    CHECK(eq.rows[0][0] == Term::iri("http://x/a"));
}

TEST_CASE("evaluation agrees with the all-assignments oracle") {
    oracles::Rng rng(23);
    for (int round = 0; round < 120; ++round) {
        auto pool = oracles::make_pool(5 + rng() % 4, 3 + rng() % 3, 6 + rng() % 5);
        auto [g, mirror] = oracles::random_graph(rng, pool, 120);
        Query q = oracles::random_query(rng, pool, mirror, 4, 3, 2);
        BindingSet got = query::evaluate(q, g);
        BindingSet expected = oracles::brute_force_evaluate(q, mirror);
        REQUIRE(got.variables == expected.variables);
        CHECK(got.rows == expected.rows);
    }
}

TEST_CASE("permuting patterns never changes the result") {
    oracles::Rng rng(29);
    for (int round = 0; round < 40; ++round) {
        auto pool = oracles::make_pool(6, 4, 8);
        auto [g, mirror] = oracles::random_graph(rng, pool, 100);
        Query q = oracles::random_query(rng, pool, mirror, 3, 3, 1);
        if (q.wildcard) {
            // pin the projection so column order survives pattern permutation
            q.wildcard = false;
            q.projection = q.pattern_variables();
        }
        if (q.projection.empty()) continue; // all-constant patterns
        BindingSet reference = query::evaluate(q, g);

        Query shuffled = q;
        for (int i = 0; i < 5; ++i) {
            std::shuffle(shuffled.patterns.begin(), shuffled.patterns.end(), rng);
            CHECK(query::evaluate(shuffled, g).rows == reference.rows);
        }
    }
}

TEST_CASE("substitute pins a variable to a constant") {
    Query q = query::parse_query("SELECT ?p WHERE { ?node net:hasPort ?p }");
    Query bound = query::substitute(q, "node", kg::element_iri("s1"));
    REQUIRE(std::holds_alternative<Term>(bound.patterns[0].s));
    CHECK(std::get<Term>(bound.patterns[0].s) == kg::element_iri("s1"));
    // original untouched
    CHECK(std::holds_alternative<query::Variable>(q.patterns[0].s));
}
