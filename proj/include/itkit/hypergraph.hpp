#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "itkit/errors.hpp"
#include "itkit/graph.hpp"

namespace itkit {

// r-uniform bipartite hypergraph: every edge meets A in one vertex and B in
// r-1 vertices. A- and B-vertices live in separate 0-based id spaces.
struct Hypergraph {
    struct Edge {
        int a = -1;
        std::vector<int> bset;  // sorted, size r-1, distinct

        bool operator==(const Edge& o) const { return a == o.a && bset == o.bset; }
        bool operator<(const Edge& o) const {
            return a != o.a ? a < o.a : bset < o.bset;
        }
    };

    int r = 2;
    int a_count = 0;
    int b_count = 0;
    std::vector<Edge> edges;  // sorted

    static Hypergraph build(int r, int a_count, int b_count, std::vector<Edge> edges) {
        if (r < 2) throw ParseError("hypergraph uniformity r must be at least 2");
        if (a_count < 0 || b_count < 0) throw ParseError("negative side size");
        for (auto& e : edges) {
            if (e.a < 0 || e.a >= a_count)
                throw ParseError("edge A-vertex " + std::to_string(e.a) + " out of range");
            if (static_cast<int>(e.bset.size()) != r - 1)
                throw ParseError("edge must contain exactly r-1 B-vertices");
            std::sort(e.bset.begin(), e.bset.end());
            if (std::adjacent_find(e.bset.begin(), e.bset.end()) != e.bset.end())
                throw ParseError("edge repeats a B-vertex");
            for (int b : e.bset)
                if (b < 0 || b >= b_count)
                    throw ParseError("edge B-vertex " + std::to_string(b) + " out of range");
        }
        std::sort(edges.begin(), edges.end());
        Hypergraph h;
        h.r = r;
        h.a_count = a_count;
        h.b_count = b_count;
        h.edges = std::move(edges);
        return h;
    }

    bool operator==(const Hypergraph& o) const {
        return r == o.r && a_count == o.a_count && b_count == o.b_count && edges == o.edges;
    }
};

// Auxiliary graph on the hyperedges: two edges are adjacent when they share a
// B-vertex; the vertex classes are indexed by the A-side. The result is
// r-claw-free with respect to this partition.
inline PartitionedGraph auxiliary_graph(const Hypergraph& h) {
    std::vector<std::vector<Vertex>> classes(h.a_count);
    for (int i = 0; i < static_cast<int>(h.edges.size()); ++i)
        classes[h.edges[i].a].push_back(i);
    for (int a = 0; a < h.a_count; ++a)
        if (classes[a].empty())
            throw EmptyClassError("A-vertex " + std::to_string(a) +
                                  " has no incident edge; no perfect matching exists");

    auto share_b = [&](const Hypergraph::Edge& e, const Hypergraph::Edge& f) {
        std::size_t i = 0, j = 0;
        while (i < e.bset.size() && j < f.bset.size()) {
            if (e.bset[i] == f.bset[j]) return true;
            if (e.bset[i] < f.bset[j])
                ++i;
            else
                ++j;
        }
        return false;
    };
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < static_cast<int>(h.edges.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(h.edges.size()); ++j)
            if (share_b(h.edges[i], h.edges[j])) edges.emplace_back(i, j);
    return PartitionedGraph::build(static_cast<int>(h.edges.size()), std::move(classes), edges);
}

} // namespace itkit
