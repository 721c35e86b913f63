#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "itkit/errors.hpp"
#include "itkit/graph.hpp"
#include "itkit/hypergraph.hpp"

namespace itkit {

// Deterministic generator state; the same seed yields the same stream on
// every platform, which keeps generated instances byte-identical.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw Error("empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }
};

// num_classes classes of class_size vertices each; random inter-class edges
// subject to the degree cap.
inline PartitionedGraph gen_random_partitioned(std::uint64_t seed, int delta, int num_classes,
                                               int class_size, int attempts_per_vertex = 8) {
    if (delta < 0 || num_classes < 0 || class_size < 1)
        throw PreconditionViolationError("bad generator parameters");
    SplitMix64 rng(seed);
    const int n = num_classes * class_size;
    std::vector<std::vector<Vertex>> classes(num_classes);
    for (int c = 0; c < num_classes; ++c)
        for (int i = 0; i < class_size; ++i) classes[c].push_back(c * class_size + i);

    std::vector<int> deg(n, 0);
    std::set<std::pair<Vertex, Vertex>> edges;
    const long attempts = static_cast<long>(attempts_per_vertex) * n;
    for (long it = 0; it < attempts; ++it) {
        if (n < 2 || delta == 0) break;
        Vertex u = static_cast<Vertex>(rng.below(n));
        Vertex v = static_cast<Vertex>(rng.below(n));
        if (u == v || u / class_size == v / class_size) continue;
        if (deg[u] >= delta || deg[v] >= delta) continue;
        auto e = std::minmax(u, v);
        if (!edges.insert({e.first, e.second}).second) continue;
        ++deg[u];
        ++deg[v];
    }
    return PartitionedGraph::build(
        n, std::move(classes), std::vector<std::pair<Vertex, Vertex>>(edges.begin(), edges.end()));
}

// Variant with per-class sizes drawn from [1, max_class_size]; used by the
// strong-colouring corpus where classes need not be full.
inline PartitionedGraph gen_random_partitioned_ragged(std::uint64_t seed, int delta,
                                                      int num_classes, int max_class_size,
                                                      int attempts_per_vertex = 8) {
    SplitMix64 rng(seed);
    std::vector<std::vector<Vertex>> classes(num_classes);
    int n = 0;
    for (int c = 0; c < num_classes; ++c) {
        int size = 1 + static_cast<int>(rng.below(max_class_size));
        for (int i = 0; i < size; ++i) classes[c].push_back(n++);
    }
    std::vector<ClassId> cls_of(n);
    for (int c = 0; c < num_classes; ++c)
        for (Vertex v : classes[c]) cls_of[v] = c;

    std::vector<int> deg(n, 0);
    std::set<std::pair<Vertex, Vertex>> edges;
    const long attempts = static_cast<long>(attempts_per_vertex) * std::max(n, 1);
    for (long it = 0; it < attempts; ++it) {
        if (n < 2 || delta == 0) break;
        Vertex u = static_cast<Vertex>(rng.below(n));
        Vertex v = static_cast<Vertex>(rng.below(n));
        if (u == v || cls_of[u] == cls_of[v]) continue;
        if (deg[u] >= delta || deg[v] >= delta) continue;
        auto e = std::minmax(u, v);
        if (!edges.insert({e.first, e.second}).second) continue;
        ++deg[u];
        ++deg[v];
    }
    return PartitionedGraph::build(
        n, std::move(classes), std::vector<std::pair<Vertex, Vertex>>(edges.begin(), edges.end()));
}

// Two classes of delta vertices with every cross edge present: max degree
// delta, class sizes below 2*delta, and no independent transversal.
inline PartitionedGraph gen_complete_bipartite_pair(int delta) {
    if (delta < 1) throw PreconditionViolationError("delta must be at least 1");
    std::vector<std::vector<Vertex>> classes(2);
    for (int i = 0; i < delta; ++i) classes[0].push_back(i);
    for (int i = 0; i < delta; ++i) classes[1].push_back(delta + i);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int i = 0; i < delta; ++i)
        for (int j = 0; j < delta; ++j) edges.emplace_back(i, delta + j);
    return PartitionedGraph::build(2 * delta, std::move(classes), edges);
}

inline Hypergraph gen_random_hypergraph(std::uint64_t seed, int r, int a_count, int b_count,
                                        int num_edges) {
    if (r < 2 || a_count < 0 || b_count < r - 1)
        throw PreconditionViolationError("bad hypergraph generator parameters");
    SplitMix64 rng(seed);
    std::vector<Hypergraph::Edge> edges;
    for (int i = 0; i < num_edges; ++i) {
        Hypergraph::Edge e;
        e.a = a_count > 0 ? static_cast<int>(rng.below(a_count)) : 0;
        std::set<int> bs;
        while (static_cast<int>(bs.size()) < r - 1) bs.insert(static_cast<int>(rng.below(b_count)));
        e.bset.assign(bs.begin(), bs.end());
        edges.push_back(std::move(e));
    }
    return Hypergraph::build(r, a_count, b_count, std::move(edges));
}

// Disjoint planted cliques of size omega plus low-degree filler; optionally a
// perfect matching between consecutive clique pairs. Maximum cliques are
// exactly the planted ones and their pairwise intersections are empty. The
// whole vertex set forms one class (the partition is irrelevant for
// clique-hitting inputs).
inline PartitionedGraph gen_clique_planted(std::uint64_t seed, int delta, int omega,
                                           int num_cliques, int filler, bool cross_matching) {
    if (omega < 3 || num_cliques < 1 || filler < 0)
        throw PreconditionViolationError("bad planted-clique parameters");
    if (delta < omega - 1 + (cross_matching ? 1 : 0))
        throw PreconditionViolationError("delta too small for the requested cliques");
    SplitMix64 rng(seed);
    const int n = num_cliques * omega + filler;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int c = 0; c < num_cliques; ++c)
        for (int i = 0; i < omega; ++i)
            for (int j = i + 1; j < omega; ++j)
                edges.emplace_back(c * omega + i, c * omega + j);
    if (cross_matching) {
        for (int c = 0; c + 1 < num_cliques; c += 2)
            for (int i = 0; i < omega; ++i)
                edges.emplace_back(c * omega + i, (c + 1) * omega + i);
    }
    // filler: a sparse matching among the trailing vertices
    const int base = num_cliques * omega;
    std::vector<char> used(filler, 0);
    for (int attempt = 0; attempt < filler; ++attempt) {
        if (filler < 2) break;
        int i = static_cast<int>(rng.below(filler));
        int j = static_cast<int>(rng.below(filler));
        if (i == j || used[i] || used[j]) continue;
        used[i] = used[j] = 1;
        edges.emplace_back(base + std::min(i, j), base + std::max(i, j));
    }
    std::vector<std::vector<Vertex>> classes(1);
    for (int v = 0; v < n; ++v) classes[0].push_back(v);
    return PartitionedGraph::build(n, std::move(classes), edges);
}

} // namespace itkit
