#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "itkit/apps.hpp"
#include "itkit/gen.hpp"
#include "oracles.hpp"

using namespace itkit;

namespace {

// delta*matching across classes of the given size: vertex i of class c is
// matched to vertex i of class c+1 for even c.
PartitionedGraph perfect_matching_instance(int num_classes, int class_size) {
    std::vector<std::vector<Vertex>> classes(num_classes);
    int n = 0;
    for (int c = 0; c < num_classes; ++c)
        for (int i = 0; i < class_size; ++i) classes[c].push_back(n++);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int c = 0; c + 1 < num_classes; c += 2)
        for (int i = 0; i < class_size; ++i)
            edges.emplace_back(c * class_size + i, (c + 1) * class_size + i);
    return PartitionedGraph::build(n, std::move(classes), edges);
}

} // namespace

TEST_CASE("transversal through a forced vertex") {
    SECTION("edgeless graph, every vertex") {
        PartitionedGraph g = PartitionedGraph::build(4, {{0, 1}, {2, 3}}, {});
        EngineParams p = EngineParams::for_epsilon(2, Rational(1, 2));
        for (Vertex v = 0; v < 4; ++v) {
            ItCertificate it = it_containing_vertex(g, v, p);
            CHECK(verify_it(g, it.transversal).ok);
            bool has = false;
            for (auto [c, u] : it.transversal)
                if (u == v) has = true;
            CHECK(has);
        }
    }
    SECTION("perfect matching with classes of three") {
        PartitionedGraph g = perfect_matching_instance(4, 3);
        REQUIRE(g.max_degree() == 1);
        EngineParams p = EngineParams::for_epsilon(2, Rational(1));
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            ItCertificate it = it_containing_vertex(g, v, p);
            CHECK(verify_it(g, it.transversal).ok);
            bool has = false;
            for (auto [c, u] : it.transversal)
                if (u == v) has = true;
            CHECK(has);
        }
    }
    SECTION("full-degree vertices in tight random instances") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            PartitionedGraph g = gen_random_partitioned(seed + 500, 2, 4, 5);
            EngineParams p = EngineParams::for_epsilon(3, Rational(1, 2));
            Vertex v = 0;
            for (Vertex u = 0; u < g.vertex_count(); ++u)
                if (g.degree(u) == 2) v = u;
            ItCertificate it = it_containing_vertex(g, v, p);
            CHECK(verify_it(g, it.transversal).ok);
            bool has = false;
            for (auto [c, u] : it.transversal)
                if (u == v) has = true;
            CHECK(has);
        }
    }
    SECTION("precondition is enforced") {
        PartitionedGraph g = gen_complete_bipartite_pair(2);  // classes of 2 < 5
        EngineParams p = EngineParams::for_epsilon(3, Rational(1, 2));
        CHECK_THROWS_AS(it_containing_vertex(g, 0, p), PreconditionViolationError);
    }
}

TEST_CASE("strong colouring") {
    SECTION("edgeless graph with small classes") {
        PartitionedGraph g = PartitionedGraph::build(4, {{0, 1, 2}, {3}}, {});
        StrongColouring sc = strong_colour(g, 1);
        CHECK(sc.k == 4);
        CHECK(verify_strong_colouring(g, sc.colour_of, sc.k).ok);
    }
    SECTION("perfect matching, classes of four") {
        PartitionedGraph g = perfect_matching_instance(4, 4);
        REQUIRE(g.max_degree() == 1);
        StrongColouring sc = strong_colour(g, 1);
        CHECK(sc.k == 4);
        CHECK(verify_strong_colouring(g, sc.colour_of, sc.k).ok);
    }
    SECTION("unions of cycles with classes up to seven") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            PartitionedGraph g = gen_random_partitioned_ragged(seed + 60, 2, 4, 7);
            StrongColouring sc = strong_colour(g, 2);
            CHECK(sc.k == 7);
            CHECK(verify_strong_colouring(g, sc.colour_of, sc.k).ok);
        }
    }
    SECTION("intra-class edges are honoured") {
        // per-class injectivity subsumes properness on intra-class edges, but
        // the verifier checks them all the same
        PartitionedGraph g = PartitionedGraph::build(
            4, {{0, 1}, {2, 3}}, {{0, 1}, {0, 2}});
        StrongColouring sc = strong_colour(g, 2);
        CHECK(sc.k == 7);
        CHECK(verify_strong_colouring(g, sc.colour_of, sc.k).ok);
        CHECK(sc.colour_of[0] != sc.colour_of[1]);
    }
    SECTION("degree-zero graphs collapse to a single colour") {
        PartitionedGraph g = PartitionedGraph::build(2, {{0}, {1}}, {});
        StrongColouring sc = strong_colour(g, 0);
        CHECK(sc.k == 1);
        CHECK(verify_strong_colouring(g, sc.colour_of, sc.k).ok);
    }
    SECTION("preconditions") {
        PartitionedGraph g = gen_complete_bipartite_pair(3);
        CHECK_THROWS_AS(strong_colour(g, 2), PreconditionViolationError);  // delta too small
        PartitionedGraph big = PartitionedGraph::build(5, {{0, 1, 2, 3, 4}}, {});
        CHECK_THROWS_AS(strong_colour(big, 1), PreconditionViolationError);  // class > 3d+1
    }
}

TEST_CASE("bounded-degree transversal") {
    SECTION("k = 2 with no inter-class edges is the trivial path") {
        PartitionedGraph g = PartitionedGraph::build(4, {{0, 1}, {2, 3}}, {});
        ItCertificate it = bounded_degree_it(g, 2);
        CHECK(verify_it(g, it.transversal).ok);
    }
    SECTION("k = 3, four classes of four, outside degree one") {
        PartitionedGraph g = perfect_matching_instance(4, 4);
        ItCertificate it = bounded_degree_it(g, 3);
        CHECK(verify_it(g, it.transversal).ok);
        auto bf = brute_force_it(g);
        CHECK(bf.has_value());
    }
    SECTION("violating the cap raises with the vertex named") {
        PartitionedGraph g = gen_complete_bipartite_pair(3);  // outside degree 3 > k-1
        CHECK_THROWS_AS(bounded_degree_it(g, 3), PreconditionViolationError);
    }
    SECTION("k = 1 requires inter-class isolation") {
        PartitionedGraph g = PartitionedGraph::build(2, {{0}, {1}}, {});
        ItCertificate it = bounded_degree_it(g, 1);
        CHECK(verify_it(g, it.transversal).ok);
    }
}

TEST_CASE("maximum clique enumeration matches a plain oracle") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        oracle::SplitMixForTests rng(seed);
        const int n = 4 + static_cast<int>(rng.below(5));
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng.below(2)) edges.emplace_back(u, v);
        PartitionedGraph g = PartitionedGraph::build(n, {[&] {
                                                         std::vector<Vertex> all(n);
                                                         std::iota(all.begin(), all.end(), 0);
                                                         return all;
                                                     }()},
                                                     edges);
        CHECK(enumerate_maximum_cliques(g) == oracle::maximum_cliques_plain(g));
    }
}

TEST_CASE("clique hitting sets") {
    SECTION("a single K4") {
        PartitionedGraph g = gen_clique_planted(1, 3, 4, 1, 0, false);
        CliqueHittingSet hs = clique_hitting_set(g, 3);
        REQUIRE(hs.cliques.size() == 1);
        CHECK(hs.cliques[0].size() == 4);
        CHECK(hs.hitting.size() == 1);
    }
    SECTION("two triangles joined by a matching") {
        // vertices 0-2 and 3-5 triangles; matching i ~ i+3
        std::vector<std::pair<Vertex, Vertex>> edges = {{0, 1}, {0, 2}, {1, 2},
                                                        {3, 4}, {3, 5}, {4, 5},
                                                        {0, 3}, {1, 4}, {2, 5}};
        PartitionedGraph g = PartitionedGraph::build(6, {{0, 1, 2, 3, 4, 5}}, edges);
        CHECK(g.max_degree() == 3);
        CliqueHittingSet hs = clique_hitting_set(g, 3);
        REQUIRE(hs.cliques.size() == 2);
        CHECK(hs.hitting.size() == 2);
        CHECK(!g.adjacent(hs.hitting[0], hs.hitting[1]));
        for (const auto& clique : hs.cliques) {
            bool hit = false;
            for (Vertex v : hs.hitting)
                if (std::binary_search(clique.begin(), clique.end(), v)) hit = true;
            CHECK(hit);
        }
    }
    SECTION("planted corpus sample") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            oracle::SplitMixForTests rng(seed);
            const int omega = 3 + static_cast<int>(rng.below(4));  // 3..6
            const bool cross = omega <= 5 && rng.below(2) == 1;
            const int delta = omega - 1 + (cross ? 1 : 0);
            const int cliques = 1 + static_cast<int>(rng.below(3));
            PartitionedGraph g =
                gen_clique_planted(seed * 3 + 7, delta, omega, cliques, 4, cross);
            CliqueHittingSet hs = clique_hitting_set(g, delta);
            // independent and hits everything the oracle enumerates
            auto expected = oracle::maximum_cliques_plain(g);
            CHECK(expected == hs.cliques);
            for (const auto& clique : expected) {
                bool hit = false;
                for (Vertex v : hs.hitting)
                    if (std::binary_search(clique.begin(), clique.end(), v)) hit = true;
                CHECK(hit);
            }
        }
    }
    SECTION("the clique-number precondition is enforced") {
        // a 5-cycle: omega = 2, delta = 2, 2 > 2(3)/3 = 2 fails
        PartitionedGraph g = PartitionedGraph::build(
            5, {{0, 1, 2, 3, 4}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
        CHECK_THROWS_AS(clique_hitting_set(g, 2), PreconditionViolationError);
    }
}
