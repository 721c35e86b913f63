#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itkit/errors.hpp"

namespace itkit {

using Vertex = int;
using ClassId = int;

// Vertex-partitioned graph. Vertex ids are dense 0..n-1 and double as the
// fixed processing order. Immutable once built; safe to share across threads.
class PartitionedGraph {
public:
    PartitionedGraph() = default;

    static PartitionedGraph build(int n, std::vector<std::vector<Vertex>> classes,
                                  const std::vector<std::pair<Vertex, Vertex>>& edges) {
        if (n < 0) throw ParseError("negative vertex count");
        PartitionedGraph g;
        g.n_ = n;
        g.adj_.assign(n, {});
        g.class_of_.assign(n, -1);
        for (ClassId c = 0; c < static_cast<ClassId>(classes.size()); ++c) {
            auto& vs = classes[c];
            std::sort(vs.begin(), vs.end());
            if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
                throw ParseError("vertex listed twice in class " + std::to_string(c));
            for (Vertex v : vs) {
                if (v < 0 || v >= n)
                    throw ParseError("vertex " + std::to_string(v) + " out of range");
                if (g.class_of_[v] != -1)
                    throw ParseError("vertex " + std::to_string(v) + " in two classes");
                g.class_of_[v] = c;
            }
        }
        for (Vertex v = 0; v < n; ++v)
            if (g.class_of_[v] == -1)
                throw ParseError("vertex " + std::to_string(v) + " not covered by any class");
        g.classes_ = std::move(classes);
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw ParseError("edge endpoint out of range");
            if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& a : g.adj_) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        return g;
    }

    int vertex_count() const { return n_; }
    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
    ClassId class_of(Vertex v) const { return class_of_[v]; }
    const std::vector<Vertex>& class_vertices(ClassId c) const { return classes_[c]; }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    int max_degree() const {
        int d = 0;
        for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    int degree_outside_class(Vertex v) const {
        int d = 0;
        for (Vertex u : adj_[v])
            if (class_of_[u] != class_of_[v]) ++d;
        return d;
    }

    // Edges as (u, v) with u < v, sorted.
    std::vector<std::pair<Vertex, Vertex>> edge_list() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool operator==(const PartitionedGraph& o) const {
        return n_ == o.n_ && adj_ == o.adj_ && classes_ == o.classes_;
    }

private:
    int n_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<ClassId> class_of_;
    std::vector<std::vector<Vertex>> classes_;
};

struct NormalizationReport {
    int removed_intra_class_edges = 0;
    // (raw class id, its recorded isolated vertex), in extraction order.
    std::vector<std::pair<ClassId, Vertex>> extracted;
    PartitionedGraph remaining;               // densely reindexed
    std::vector<Vertex> vertex_to_raw;        // remaining vertex id -> raw vertex id
    std::vector<ClassId> class_to_raw;        // remaining class id -> raw class id
};

// Deletes intra-class edges, then repeatedly removes every class that contains
// an isolated vertex (recording the lowest-id such vertex for later
// re-insertion into any transversal) until no isolated vertex remains.
inline NormalizationReport normalize(const PartitionedGraph& raw) {
    const int n = raw.vertex_count();
    const int m = raw.class_count();
    for (ClassId c = 0; c < m; ++c)
        if (raw.class_vertices(c).empty())
            throw EmptyClassError("class " + std::to_string(c) + " is empty");

    NormalizationReport rep;

    // strip intra-class edges
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : raw.neighbours(u)) {
            if (raw.class_of(u) == raw.class_of(v)) {
                if (u < v) ++rep.removed_intra_class_edges;
            } else {
                adj[u].push_back(v);
            }
        }

    std::vector<char> class_alive(m, 1);
    for (;;) {
        std::vector<std::pair<ClassId, Vertex>> round;
        for (ClassId c = 0; c < m; ++c) {
            if (!class_alive[c]) continue;
            for (Vertex v : raw.class_vertices(c)) {
                bool isolated = true;
                for (Vertex u : adj[v])
                    if (class_alive[raw.class_of(u)]) {
                        isolated = false;
                        break;
                    }
                if (isolated) {
                    round.emplace_back(c, v);
                    break;  // lowest-id isolated vertex of the class
                }
            }
        }
        if (round.empty()) break;
        for (auto [c, v] : round) class_alive[c] = 0;
        rep.extracted.insert(rep.extracted.end(), round.begin(), round.end());
    }

    std::vector<int> new_id(n, -1);
    for (Vertex v = 0; v < n; ++v)
        if (class_alive[raw.class_of(v)]) {
            new_id[v] = static_cast<int>(rep.vertex_to_raw.size());
            rep.vertex_to_raw.push_back(v);
        }
    std::vector<std::vector<Vertex>> classes;
    for (ClassId c = 0; c < m; ++c)
        if (class_alive[c]) {
            rep.class_to_raw.push_back(c);
            std::vector<Vertex> vs;
            for (Vertex v : raw.class_vertices(c)) vs.push_back(new_id[v]);
            classes.push_back(std::move(vs));
        }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u) {
        if (new_id[u] < 0) continue;
        for (Vertex v : adj[u])
            if (u < v && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
    }
    rep.remaining =
        PartitionedGraph::build(static_cast<int>(rep.vertex_to_raw.size()), std::move(classes), edges);
    return rep;
}

struct ClawWitness {
    Vertex center;
    std::vector<Vertex> leaves;  // r pairwise-nonadjacent neighbours in r distinct classes
};

// Exact backtracking search for an r-claw; worst case exponential in the
// degree, meant for desk-scale inputs. Returns the first witness in vertex
// order, or nullopt when g is r-claw-free with respect to its partition.
inline std::optional<ClawWitness> claw_free_witness(const PartitionedGraph& g, int r) {
    if (r < 2) throw PreconditionViolationError("claw parameter r must be at least 2");
    if (r > g.max_degree()) return std::nullopt;  // any graph is (deg+1)-claw-free

    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) < r) continue;
        std::map<ClassId, std::vector<Vertex>> by_class;
        for (Vertex u : g.neighbours(v)) by_class[g.class_of(u)].push_back(u);
        if (static_cast<int>(by_class.size()) < r) continue;
        std::vector<std::vector<Vertex>> groups;
        for (auto& [c, vs] : by_class) groups.push_back(vs);

        std::vector<Vertex> chosen;
        auto backtrack = [&](auto&& self, std::size_t idx) -> bool {
            if (static_cast<int>(chosen.size()) == r) return true;
            if (idx >= groups.size()) return false;
            if (static_cast<int>(groups.size() - idx + chosen.size()) < r) return false;
            for (Vertex u : groups[idx]) {
                bool ok = true;
                for (Vertex w : chosen)
                    if (g.adjacent(u, w)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                chosen.push_back(u);
                if (self(self, idx + 1)) return true;
                chosen.pop_back();
            }
            return self(self, idx + 1);  // skip this class
        };
        if (backtrack(backtrack, 0)) return ClawWitness{v, chosen};
    }
    return std::nullopt;
}

} // namespace itkit
