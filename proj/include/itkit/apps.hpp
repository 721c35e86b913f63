#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "itkit/certify.hpp"
#include "itkit/engine.hpp"
#include "itkit/hypergraph.hpp"
#include "itkit/solve.hpp"

namespace itkit {

// ---------------------------------------------------------------- matching

struct MatchOutcome {
    struct Matching {
        std::vector<int> edge_indices;  // sorted indices into Hypergraph::edges
    };
    struct Cover {
        std::vector<int> s;   // A-vertices indexing B
        std::vector<int> t;   // B-cover of E_S
        std::vector<int> s0;  // A-vertices indexing B0
        std::vector<Star> constellation;  // stars over hyperedge indices
        Rational eps;
    };

    std::variant<Matching, Cover> value;

    bool is_matching() const { return std::holds_alternative<Matching>(value); }
    const Matching& matching() const { return std::get<Matching>(value); }
    const Cover& cover() const { return std::get<Cover>(value); }
};

// Perfect matching via the auxiliary graph, run at eps' = eps/(r-1). A
// transversal is a perfect matching; a dominated class set yields a B-cover
// T of E_S with |T| < (2r-3+eps)(|S|-1), asserted exactly.
inline MatchOutcome hypergraph_match(const Hypergraph& h, const Rational& eps) {
    if (!(eps > 0)) throw PreconditionViolationError("eps > 0 required");

    std::vector<char> covered(h.a_count, 0);
    for (const auto& e : h.edges) covered[e.a] = 1;
    for (int a = 0; a < h.a_count; ++a)
        if (!covered[a])
            return MatchOutcome{MatchOutcome::Cover{{a}, {}, {a}, {}, eps}};

    PartitionedGraph aux = auxiliary_graph(h);
    EngineParams params = EngineParams::for_epsilon(h.r, eps / (h.r - 1));
    SolveResult res = solve(aux, params);

    if (res.certificate.is_it()) {
        MatchOutcome::Matching match;
        for (auto [cls, v] : res.certificate.it().transversal) match.edge_indices.push_back(v);
        std::sort(match.edge_indices.begin(), match.edge_indices.end());
        VerificationReport rep = verify_matching(h, match.edge_indices);
        if (!rep.ok)
            throw CertificateViolationError("matching failed verification: " +
                                            rep.violations.front().first);
        return MatchOutcome{std::move(match)};
    }

    const BdCertificate& bd = res.certificate.bd();
    MatchOutcome::Cover cover;
    cover.eps = eps;
    cover.s = bd.b_classes;    // classes are indexed by A
    cover.s0 = bd.b0_classes;
    cover.constellation = bd.constellation;
    std::set<int> t;
    for (Vertex e : bd.dominating)
        t.insert(h.edges[e].bset.begin(), h.edges[e].bset.end());
    cover.t.assign(t.begin(), t.end());

    // exact certificate arithmetic
    std::set<int> sset(cover.s.begin(), cover.s.end());
    for (const auto& e : h.edges) {
        if (!sset.count(e.a)) continue;
        bool hit = false;
        for (int bvert : e.bset)
            if (t.count(bvert)) {
                hit = true;
                break;
            }
        if (!hit) throw CertificateViolationError("cover misses an edge of E_S");
    }
    if (!(Rational(static_cast<long>(cover.t.size())) <
          (2 * h.r - 3 + eps) * (static_cast<long>(cover.s.size()) - 1)))
        throw CertificateViolationError("cover bound (2r-3+eps)(|S|-1) violated");
    return MatchOutcome{std::move(cover)};
}

// ------------------------------------------------------- transversal via v

// Runs the engine on g with A(v) replaced by the singleton {v} (the rest of
// v's class is dropped). Under class sizes >= 2*maxdeg+1 the dominated-set
// outcome is impossible, so the result is a transversal through v.
inline ItCertificate it_containing_vertex(const PartitionedGraph& g, Vertex v,
                                          const EngineParams& params) {
    if (v < 0 || v >= g.vertex_count())
        throw PreconditionViolationError("vertex out of range");
    const int delta = g.max_degree();
    for (ClassId c = 0; c < g.class_count(); ++c)
        if (static_cast<int>(g.class_vertices(c).size()) < 2 * delta + 1)
            throw PreconditionViolationError("class " + std::to_string(c) +
                                             " smaller than 2*maxdeg+1");

    const ClassId vc = g.class_of(v);
    std::vector<Vertex> to_new(g.vertex_count(), -1);
    std::vector<Vertex> to_old;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (g.class_of(u) == vc && u != v) continue;
        to_new[u] = static_cast<int>(to_old.size());
        to_old.push_back(u);
    }
    std::vector<std::vector<Vertex>> classes(g.class_count());
    for (Vertex u : to_old) classes[g.class_of(u)].push_back(to_new[u]);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [a, b] : g.edge_list())
        if (to_new[a] >= 0 && to_new[b] >= 0) edges.emplace_back(to_new[a], to_new[b]);
    PartitionedGraph sub =
        PartitionedGraph::build(static_cast<int>(to_old.size()), std::move(classes), edges);

    SolveResult res = solve(sub, params);
    if (!res.certificate.is_it())
        throw CertificateViolationError(
            "dominated-set outcome despite transversal-forcing precondition");

    ItCertificate out;
    for (auto [cls, u] : res.certificate.it().transversal) out.transversal.emplace_back(cls, to_old[u]);
    std::sort(out.transversal.begin(), out.transversal.end());
    bool has_v = false;
    for (auto [cls, u] : out.transversal)
        if (u == v) has_v = true;
    if (!has_v) throw CertificateViolationError("transversal does not contain the forced vertex");
    return out;
}

// ---------------------------------------------------------- strong colour

struct StrongColouring {
    std::vector<int> colour_of;  // per raw vertex, values in 0..k-1
    int k = 0;
};

// Strong (3*delta+1)-colouring: pad every class with isolated dummies to
// exactly 3*delta+1 vertices, then repeatedly recolour along a transversal
// through the lowest uncoloured vertex; every round colours at least one more
// vertex. Dummies are stripped from the result.
inline StrongColouring strong_colour(const PartitionedGraph& g, int delta) {
    if (delta < 0) throw PreconditionViolationError("delta must be nonnegative");
    if (g.max_degree() > delta)
        throw PreconditionViolationError("graph max degree exceeds delta");
    const int k = 3 * delta + 1;
    for (ClassId c = 0; c < g.class_count(); ++c)
        if (static_cast<int>(g.class_vertices(c).size()) > k)
            throw PreconditionViolationError("class " + std::to_string(c) +
                                             " larger than 3*delta+1");
    const int n = g.vertex_count();
    const int m = g.class_count();
    if (m == 0) return {std::vector<int>(), k};
    if (delta == 0) {
        // classes are singletons and there are no edges
        return {std::vector<int>(n, 0), k};
    }

    // padded graph: real vertices keep their ids; dummies appended
    int n_pad = n;
    std::vector<std::vector<Vertex>> pad_classes(m);
    for (ClassId c = 0; c < m; ++c) {
        pad_classes[c] = g.class_vertices(c);
        while (static_cast<int>(pad_classes[c].size()) < k) pad_classes[c].push_back(n_pad++);
    }
    PartitionedGraph padded = PartitionedGraph::build(n_pad, pad_classes, g.edge_list());

    const EngineParams params = EngineParams::for_epsilon(delta + 1, Rational(1, delta));
    std::vector<int> colour(n_pad, -1);
    auto coloured_count = [&] {
        return static_cast<int>(std::count_if(colour.begin(), colour.end(),
                                              [](int c) { return c >= 0; }));
    };

    for (int round = 0; round <= n_pad; ++round) {
        Vertex v = -1;
        for (Vertex u = 0; u < n; ++u)
            if (colour[u] < 0) {
                v = u;
                break;
            }
        if (v < 0) break;  // every real vertex coloured

        const ClassId vc = padded.class_of(v);
        std::vector<char> used(k, 0);
        for (Vertex u : padded.class_vertices(vc))
            if (colour[u] >= 0) used[colour[u]] = 1;
        int alpha = 0;
        while (alpha < k && used[alpha]) ++alpha;
        if (alpha == k) throw InternalInvariantViolationError("no free colour in a class");

        // the alpha-coloured vertex of each class, if any
        std::vector<Vertex> w_of(m, -1);
        for (ClassId c = 0; c < m; ++c)
            for (Vertex u : padded.class_vertices(c))
                if (colour[u] == alpha) w_of[c] = u;

        // drop the vertices whose colour appears on the neighbourhood of w_i
        std::vector<char> keep(n_pad, 1);
        for (ClassId c = 0; c < m; ++c) {
            if (w_of[c] < 0) continue;
            std::set<int> bad;
            for (Vertex u : padded.neighbours(w_of[c]))
                if (colour[u] >= 0) bad.insert(colour[u]);
            for (Vertex u : padded.class_vertices(c))
                if (colour[u] >= 0 && bad.count(colour[u])) keep[u] = 0;
        }

        std::vector<Vertex> to_old;
        std::vector<Vertex> to_new(n_pad, -1);
        for (Vertex u = 0; u < n_pad; ++u)
            if (keep[u]) {
                to_new[u] = static_cast<int>(to_old.size());
                to_old.push_back(u);
            }
        std::vector<std::vector<Vertex>> sub_classes(m);
        for (ClassId c = 0; c < m; ++c)
            for (Vertex u : pad_classes[c])
                if (keep[u]) sub_classes[c].push_back(to_new[u]);
        std::vector<std::pair<Vertex, Vertex>> sub_edges;
        for (auto [a, bvert] : padded.edge_list())
            if (keep[a] && keep[bvert]) sub_edges.emplace_back(to_new[a], to_new[bvert]);
        PartitionedGraph sub = PartitionedGraph::build(static_cast<int>(to_old.size()),
                                                       std::move(sub_classes), sub_edges);

        ItCertificate it = it_containing_vertex(sub, to_new[v], params);

        const int before = coloured_count();
        std::vector<int> next = colour;
        std::vector<Vertex> y_of(m, -1);
        for (auto [cls, u] : it.transversal) y_of[cls] = to_old[u];
        for (ClassId c = 0; c < m; ++c) {
            if (y_of[c] < 0) throw InternalInvariantViolationError("transversal misses a class");
            next[y_of[c]] = alpha;
        }
        for (ClassId c = 0; c < m; ++c)
            if (w_of[c] >= 0 && w_of[c] != y_of[c]) next[w_of[c]] = colour[y_of[c]];
        colour = std::move(next);

        if (coloured_count() <= before || colour[v] != alpha)
            throw InternalInvariantViolationError("recolouring round failed to extend");
        // the recoloured map must stay a partial strong colouring
        for (auto [a, bvert] : padded.edge_list())
            if (colour[a] >= 0 && colour[a] == colour[bvert])
                throw InternalInvariantViolationError("recolouring broke properness");
        for (ClassId c = 0; c < m; ++c) {
            std::set<int> seen;
            for (Vertex u : padded.class_vertices(c))
                if (colour[u] >= 0 && !seen.insert(colour[u]).second)
                    throw InternalInvariantViolationError("recolouring broke injectivity");
        }
    }

    StrongColouring out;
    out.k = k;
    out.colour_of.assign(colour.begin(), colour.begin() + n);
    for (int c : out.colour_of)
        if (c < 0) throw InternalInvariantViolationError("vertex left uncoloured");
    return out;
}

// ------------------------------------------------------ bounded-degree IT

// Every vertex has at most min(k-1, |V_i|-k) neighbours outside its class, so
// the graph is k-claw-free and the dominated-set outcome is impossible at
// eps = 1/(k-1).
inline ItCertificate bounded_degree_it(const PartitionedGraph& g, int k) {
    if (k < 1) throw PreconditionViolationError("k must be at least 1");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const long size_cap =
            static_cast<long>(g.class_vertices(g.class_of(v)).size()) - k;
        const long cap = std::min<long>(k - 1, size_cap);
        if (g.degree_outside_class(v) > cap || cap < 0)
            throw PreconditionViolationError("vertex " + std::to_string(v) +
                                             " exceeds the outside-degree cap");
    }
    if (k == 1) {
        // zero outside-degree: stripping intra-class edges isolates everything
        NormalizationReport norm = normalize(g);
        if (norm.remaining.class_count() != 0)
            throw InternalInvariantViolationError("k = 1 instance not fully extracted");
        ItCertificate it;
        for (auto [cls, v] : norm.extracted) it.transversal.emplace_back(cls, v);
        std::sort(it.transversal.begin(), it.transversal.end());
        return it;
    }
    EngineParams params = EngineParams::for_epsilon(k, Rational(1, k - 1));
    SolveResult res = solve(g, params);
    if (!res.certificate.is_it())
        throw CertificateViolationError(
            "dominated-set outcome despite bounded-degree precondition");
    return res.certificate.it();
}

// ------------------------------------------------------- clique hitting

// All maximal cliques by pivoted recursion, kept only at maximum size.
// The budget caps recursion nodes.
inline std::vector<std::vector<Vertex>> enumerate_maximum_cliques(
    const PartitionedGraph& g, long long budget = oracle_budget()) {
    std::vector<std::vector<Vertex>> maximal;
    std::vector<Vertex> r;
    long long nodes = 0;

    auto explore = [&](auto&& self, std::vector<Vertex> p, std::vector<Vertex> x) -> void {
        if (++nodes > budget) throw BudgetExceededError("clique enumeration budget exhausted");
        if (p.empty() && x.empty()) {
            maximal.push_back(r);
            return;
        }
        Vertex pivot = -1;
        std::size_t best = 0;
        for (Vertex u : p) {
            std::size_t cnt = 0;
            for (Vertex w : p)
                if (g.adjacent(u, w)) ++cnt;
            if (pivot < 0 || cnt > best) {
                pivot = u;
                best = cnt;
            }
        }
        for (Vertex u : x) {
            std::size_t cnt = 0;
            for (Vertex w : p)
                if (g.adjacent(u, w)) ++cnt;
            if (pivot < 0 || cnt > best) {
                pivot = u;
                best = cnt;
            }
        }
        std::vector<Vertex> candidates;
        for (Vertex u : p)
            if (pivot < 0 || !g.adjacent(pivot, u)) candidates.push_back(u);
        for (Vertex u : candidates) {
            std::vector<Vertex> np, nx;
            for (Vertex w : p)
                if (g.adjacent(u, w)) np.push_back(w);
            for (Vertex w : x)
                if (g.adjacent(u, w)) nx.push_back(w);
            r.push_back(u);
            self(self, std::move(np), std::move(nx));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), u));
            x.push_back(u);
        }
    };

    std::vector<Vertex> all(g.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    explore(explore, std::move(all), {});

    std::size_t omega = 0;
    for (const auto& c : maximal) omega = std::max(omega, c.size());
    std::vector<std::vector<Vertex>> out;
    for (auto& c : maximal)
        if (c.size() == omega) {
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
        }
    std::sort(out.begin(), out.end());
    return out;
}

struct CliqueHittingSet {
    std::vector<Vertex> hitting;                // independent, meets every maximum clique
    std::vector<std::vector<Vertex>> cliques;   // the enumerated maximum cliques
};

// King-style hitting set: group the maximum cliques into components of their
// intersection graph, take each component's common core as a class, and find
// a transversal of the cores with k = ceil((delta+1)/3). The core size and
// disjointness guarantees are cited, not re-proved, hence checked.
inline CliqueHittingSet clique_hitting_set(const PartitionedGraph& g, int delta,
                                           long long budget = oracle_budget()) {
    if (delta < 0 || g.max_degree() > delta)
        throw PreconditionViolationError("graph max degree exceeds delta");
    auto cliques = enumerate_maximum_cliques(g, budget);
    if (cliques.empty()) throw PreconditionViolationError("graph has no vertices");
    const long omega = static_cast<long>(cliques.front().size());
    if (!(3 * omega > 2 * (delta + 1)))
        throw PreconditionViolationError("clique number too small: need omega > 2(delta+1)/3");

    // components of the clique-intersection graph
    const int t = static_cast<int>(cliques.size());
    std::vector<int> parent(t);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](auto&& self, int a) -> int {
        return parent[a] == a ? a : parent[a] = self(self, parent[a]);
    };
    auto intersects = [&](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) return true;
            a[i] < b[j] ? ++i : ++j;
        }
        return false;
    };
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if (intersects(cliques[i], cliques[j])) parent[find(find, i)] = find(find, j);

    std::map<int, std::vector<int>> components;
    for (int i = 0; i < t; ++i) components[find(find, i)].push_back(i);

    std::vector<std::vector<Vertex>> cores;
    for (const auto& [root, members] : components) {
        std::vector<Vertex> core = cliques[members.front()];
        for (std::size_t idx = 1; idx < members.size(); ++idx) {
            std::vector<Vertex> next;
            std::set_intersection(core.begin(), core.end(), cliques[members[idx]].begin(),
                                  cliques[members[idx]].end(), std::back_inserter(next));
            core = std::move(next);
        }
        cores.push_back(std::move(core));
    }
    std::sort(cores.begin(), cores.end());

    const int k = (delta + 1 + 2) / 3;  // ceil((delta+1)/3)
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& core : cores) {
        if (static_cast<int>(core.size()) < k)
            throw CoreStructureViolationError("component core smaller than ceil((delta+1)/3)");
        for (Vertex v : core) {
            if (seen[v]) throw CoreStructureViolationError("cores are not disjoint");
            seen[v] = 1;
        }
    }

    // transversal of the cores inside their induced subgraph
    std::vector<Vertex> to_old;
    std::vector<Vertex> to_new(g.vertex_count(), -1);
    for (const auto& core : cores)
        for (Vertex v : core) {
            to_new[v] = static_cast<int>(to_old.size());
            to_old.push_back(v);
        }
    std::sort(to_old.begin(), to_old.end());
    for (int i = 0; i < static_cast<int>(to_old.size()); ++i) to_new[to_old[i]] = i;
    std::vector<std::vector<Vertex>> classes;
    for (const auto& core : cores) {
        std::vector<Vertex> cls;
        for (Vertex v : core) cls.push_back(to_new[v]);
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [u, v] : g.edge_list())
        if (to_new[u] >= 0 && to_new[v] >= 0 && (seen[u] && seen[v]))
            edges.emplace_back(to_new[u], to_new[v]);
    PartitionedGraph sub =
        PartitionedGraph::build(static_cast<int>(to_old.size()), std::move(classes), edges);

    ItCertificate it = bounded_degree_it(sub, k);

    CliqueHittingSet out;
    out.cliques = std::move(cliques);
    for (auto [cls, v] : it.transversal) out.hitting.push_back(to_old[v]);
    std::sort(out.hitting.begin(), out.hitting.end());

    for (std::size_t i = 0; i < out.hitting.size(); ++i)
        for (std::size_t j = i + 1; j < out.hitting.size(); ++j)
            if (g.adjacent(out.hitting[i], out.hitting[j]))
                throw CertificateViolationError("hitting set is not independent");
    for (const auto& clique : out.cliques) {
        bool hit = false;
        for (Vertex v : out.hitting)
            if (std::binary_search(clique.begin(), clique.end(), v)) {
                hit = true;
                break;
            }
        if (!hit) throw CertificateViolationError("a maximum clique avoids the hitting set");
    }
    return out;
}

} // namespace itkit
