#include <catch2/catch_amalgamated.hpp>

#include "itkit/gen.hpp"
#include "itkit/io.hpp"
#include "itkit/solve.hpp"
#include "oracles.hpp"

using namespace itkit;

TEST_CASE("instance text format round-trips") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        PartitionedGraph g = gen_random_partitioned(seed, 3, 4, 3);
        CHECK(parse_instance_text(print_instance_text(g)) == g);
        CHECK(parse_instance_json(print_instance_json(g)) == g);
    }
}

TEST_CASE("instance parser accepts comments and whitespace") {
    const std::string text = R"(# a small instance
graph 4
class 0 0 1   # first class
class 1 2 3

edge 0 2
edge 0 2
edge 1 3
)";
    PartitionedGraph g = parse_instance_text(text);
    CHECK(g.vertex_count() == 4);
    CHECK(g.class_count() == 2);
    CHECK(g.adjacent(0, 2));
    CHECK(g.degree(0) == 1);  // duplicate edge ignored
}

TEST_CASE("instance parser rejects malformed input") {
    CHECK_THROWS_AS(parse_instance_text("class 0 0\n"), ParseError);        // no graph line
    CHECK_THROWS_AS(parse_instance_text("graph 2\nclass 1 0 1\n"), ParseError);  // gap in ids
    CHECK_THROWS_AS(parse_instance_text("graph 2\nclass 0 0 1\nedge 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("graph 1\nclass 0 0\nedge 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("graph x\nclass 0 0\n"), ParseError);
}

TEST_CASE("hypergraph text format round-trips") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Hypergraph h = gen_random_hypergraph(seed, 3, 4, 6, 9);
        CHECK(parse_hypergraph_text(print_hypergraph_text(h)) == h);
    }
    Hypergraph h2 = parse_hypergraph_text("hypergraph 2\naside 0 1\nbside 0\nedge 0 0\nedge 1 0\n");
    CHECK(h2.r == 2);
    CHECK(h2.a_count == 2);
    CHECK(h2.edges.size() == 2);
}

TEST_CASE("certificate JSON round-trips") {
    SECTION("transversal certificates") {
        PartitionedGraph g = gen_random_partitioned(5, 2, 4, 5);
        SolveResult res = solve(g, EngineParams::for_epsilon(3, Rational(1, 2)));
        REQUIRE(res.certificate.is_it());
        Json j = certificate_to_json(res.certificate);
        Certificate back = certificate_from_json(j);
        REQUIRE(back.is_it());
        CHECK(back.it().transversal == res.certificate.it().transversal);
    }
    SECTION("dominated-classes certificates") {
        PartitionedGraph g = gen_complete_bipartite_pair(2);
        SolveResult res = solve(g, EngineParams::defaults(3, Rational(1, 2)));
        REQUIRE(!res.certificate.is_it());
        Json j = certificate_to_json(res.certificate);
        CHECK(j.at("outcome") == "bd");
        CHECK(j.at("params").at("eps") == "1/2");
        Certificate back = certificate_from_json(j);
        REQUIRE(!back.is_it());
        CHECK(back.bd().b_classes == res.certificate.bd().b_classes);
        CHECK(back.bd().dominating == res.certificate.bd().dominating);
        CHECK(back.bd().params.eps == res.certificate.bd().params.eps);
        CHECK(verify_bd(g, back.bd()).ok);
    }
}

TEST_CASE("certificate JSON shape matches the documented schema") {
    PartitionedGraph g = PartitionedGraph::build(2, {{0}, {1}}, {});
    SolveResult res = solve(g, EngineParams::raw(2, 1, 1, 1, 1));
    Json j = certificate_to_json(res.certificate);
    CHECK(j.at("outcome") == "it");
    CHECK(j.at("transversal").at("0") == 0);
    CHECK(j.at("transversal").at("1") == 1);
}

TEST_CASE("generators are deterministic") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(print_instance_text(gen_random_partitioned(seed, 3, 5, 7)) ==
              print_instance_text(gen_random_partitioned(seed, 3, 5, 7)));
        CHECK(print_hypergraph_text(gen_random_hypergraph(seed, 3, 5, 8, 12)) ==
              print_hypergraph_text(gen_random_hypergraph(seed, 3, 5, 8, 12)));
        CHECK(print_instance_text(gen_clique_planted(seed, 5, 4, 2, 4, false)) ==
              print_instance_text(gen_clique_planted(seed, 5, 4, 2, 4, false)));
    }
}

TEST_CASE("complete bipartite pairs have no transversal") {
    for (int delta = 1; delta <= 3; ++delta) {
        PartitionedGraph g = gen_complete_bipartite_pair(delta);
        CHECK(g.max_degree() == delta);
        CHECK(oracle::all_its(g).empty());
    }
}
