#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itkit/certificate.hpp"
#include "itkit/graph.hpp"
#include "itkit/hypergraph.hpp"
#include "itkit/rational.hpp"

// Independent verification of certificates plus brute-force oracles for
// desk-scale equivalence testing. Everything here recomputes from the raw
// graph; no engine code is shared beyond the certificate data types.

namespace itkit {

struct VerificationReport {
    bool ok = true;
    std::vector<std::pair<std::string, std::string>> violations;  // (name, detail)

    bool has(const std::string& name) const {
        for (const auto& [n, d] : violations)
            if (n == name) return true;
        return false;
    }
};

inline long long oracle_budget() {
    if (const char* s = std::getenv("ITKIT_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000LL;
}

inline VerificationReport verify_it(const PartitionedGraph& g,
                                    const std::vector<std::pair<ClassId, Vertex>>& transversal) {
    VerificationReport rep;
    auto fail = [&](const std::string& name, const std::string& detail) {
        rep.violations.emplace_back(name, detail);
    };
    const int m = g.class_count();
    std::vector<int> seen(m, 0);
    std::vector<Vertex> chosen;
    for (auto [c, v] : transversal) {
        if (c < 0 || c >= m || v < 0 || v >= g.vertex_count()) {
            fail("membership", "entry (" + std::to_string(c) + "," + std::to_string(v) +
                                   ") out of range");
            continue;
        }
        ++seen[c];
        if (g.class_of(v) != c)
            fail("membership", "vertex " + std::to_string(v) + " is not in class " +
                                   std::to_string(c));
        chosen.push_back(v);
    }
    for (ClassId c = 0; c < m; ++c) {
        if (seen[c] == 0)
            fail("coverage", "class " + std::to_string(c) + " not covered");
        else if (seen[c] > 1)
            fail("coverage", "class " + std::to_string(c) + " covered more than once");
    }
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            if (g.adjacent(chosen[i], chosen[j]))
                fail("independence", "vertices " + std::to_string(chosen[i]) + " and " +
                                         std::to_string(chosen[j]) + " are adjacent");
    rep.ok = rep.violations.empty();
    return rep;
}

inline VerificationReport verify_bd(const PartitionedGraph& g, const BdCertificate& cert) {
    VerificationReport rep;
    auto fail = [&](const std::string& name, const std::string& detail) {
        rep.violations.emplace_back(name, detail);
    };
    const int m = g.class_count();
    const int n = g.vertex_count();

    bool ids_ok = true;
    for (ClassId c : cert.b_classes)
        if (c < 0 || c >= m) ids_ok = false;
    for (ClassId c : cert.b0_classes)
        if (c < 0 || c >= m) ids_ok = false;
    for (Vertex v : cert.dominating)
        if (v < 0 || v >= n) ids_ok = false;
    for (const Star& s : cert.constellation) {
        if (s.center < 0 || s.center >= n) ids_ok = false;
        for (Vertex v : s.leaves)
            if (v < 0 || v >= n) ids_ok = false;
    }
    if (!ids_ok) {
        fail("format", "certificate references out-of-range ids");
        rep.ok = false;
        return rep;
    }

    const std::set<ClassId> b(cert.b_classes.begin(), cert.b_classes.end());
    const std::set<ClassId> b0(cert.b0_classes.begin(), cert.b0_classes.end());
    const std::set<Vertex> d(cert.dominating.begin(), cert.dominating.end());

    for (ClassId c : b)
        if (!b0.count(c)) {
            fail("b-subset", "class " + std::to_string(c) + " of B is not in B0");
            break;
        }

    // D must dominate every vertex of the union of B via open neighbourhoods.
    for (ClassId c : b) {
        for (Vertex v : g.class_vertices(c)) {
            bool dominated = false;
            for (Vertex u : g.neighbours(v))
                if (d.count(u)) {
                    dominated = true;
                    break;
                }
            if (!dominated) {
                fail("domination", "vertex " + std::to_string(v) + " of class " +
                                       std::to_string(c) + " has no neighbour in D");
            }
        }
    }

    // Constellation: vertex-disjoint stars in G_{B0} (center-leaf edges of G
    // between distinct classes of B0), induced, whose leaves form an IT of
    // |B0|-1 classes of B0.
    std::set<Vertex> vk;
    std::map<Vertex, int> star_of;
    bool structure_ok = true;
    for (int si = 0; si < static_cast<int>(cert.constellation.size()); ++si) {
        const Star& s = cert.constellation[si];
        if (s.leaves.empty()) {
            fail("constellation", "star at " + std::to_string(s.center) + " has no leaves");
            structure_ok = false;
        }
        if (!vk.insert(s.center).second) {
            fail("constellation", "vertex " + std::to_string(s.center) + " used twice");
            structure_ok = false;
        }
        star_of[s.center] = si;
        if (!b0.count(g.class_of(s.center))) {
            fail("constellation", "center " + std::to_string(s.center) + " outside B0");
            structure_ok = false;
        }
        for (Vertex leaf : s.leaves) {
            if (leaf == s.center) {
                fail("constellation", "star center repeated as leaf");
                structure_ok = false;
                continue;
            }
            if (!vk.insert(leaf).second) {
                fail("constellation", "vertex " + std::to_string(leaf) + " used twice");
                structure_ok = false;
            }
            star_of[leaf] = si;
            if (!b0.count(g.class_of(leaf))) {
                fail("constellation", "leaf " + std::to_string(leaf) + " outside B0");
                structure_ok = false;
            }
            if (!g.adjacent(s.center, leaf) || g.class_of(s.center) == g.class_of(leaf)) {
                fail("constellation", "pair (" + std::to_string(s.center) + "," +
                                          std::to_string(leaf) +
                                          ") is not an inter-class edge");
                structure_ok = false;
            }
        }
    }
    if (structure_ok) {
        // induced: any inter-class adjacency inside V(K) must be one of the
        // declared center-leaf pairs
        for (Vertex u : vk)
            for (Vertex w : g.neighbours(u)) {
                if (u >= w || !vk.count(w)) continue;
                if (g.class_of(u) == g.class_of(w)) continue;  // absent from G_{B0}
                bool is_star_edge = false;
                if (star_of[u] == star_of[w]) {
                    const Star& s = cert.constellation[star_of[u]];
                    is_star_edge = (s.center == u || s.center == w);
                }
                if (!is_star_edge)
                    fail("constellation", "edge (" + std::to_string(u) + "," +
                                              std::to_string(w) + ") makes K non-induced");
            }
        // leaves form an IT of |B0|-1 classes of B0
        std::map<ClassId, int> leaf_classes;
        std::vector<Vertex> leaves;
        for (const Star& s : cert.constellation)
            for (Vertex leaf : s.leaves) {
                ++leaf_classes[g.class_of(leaf)];
                leaves.push_back(leaf);
            }
        for (auto [c, cnt] : leaf_classes)
            if (cnt > 1)
                fail("constellation",
                     "class " + std::to_string(c) + " holds more than one leaf");
        if (static_cast<long>(leaf_classes.size()) !=
            static_cast<long>(b0.size()) - 1)
            fail("constellation", "leaves cover " + std::to_string(leaf_classes.size()) +
                                      " classes, expected |B0|-1 = " +
                                      std::to_string(static_cast<long>(b0.size()) - 1));
        for (std::size_t i = 0; i < leaves.size(); ++i)
            for (std::size_t j = i + 1; j < leaves.size(); ++j)
                if (g.adjacent(leaves[i], leaves[j]))
                    fail("constellation", "leaves " + std::to_string(leaves[i]) + " and " +
                                              std::to_string(leaves[j]) + " are adjacent");
    }

    for (Vertex v : vk)
        if (!d.count(v)) {
            fail("vk-subset", "constellation vertex " + std::to_string(v) + " missing from D");
            break;
        }

    const long b_minus_1 = static_cast<long>(b.size()) - 1;
    if (!(Rational(static_cast<long>(d.size())) < (2 + cert.params.eps) * b_minus_1))
        fail("d-size", "|D| = " + std::to_string(d.size()) + " is not below (2+eps)(|B|-1)");
    long outside = 0;
    for (Vertex v : d)
        if (!vk.count(v)) ++outside;
    if (!(Rational(outside) < cert.params.eps * b_minus_1))
        fail("dk-size", "|D \\ V(K)| = " + std::to_string(outside) +
                            " is not below eps(|B|-1)");

    rep.ok = rep.violations.empty();
    return rep;
}

// Lexicographically-first independent transversal by backtracking over
// classes in increasing id, or nullopt if none exists. The product of class
// sizes must fit the budget.
inline std::optional<std::vector<Vertex>> brute_force_it(const PartitionedGraph& g,
                                                         long long budget = oracle_budget()) {
    const int m = g.class_count();
    unsigned __int128 prod = 1;
    for (ClassId c = 0; c < m; ++c) {
        prod *= static_cast<unsigned long long>(g.class_vertices(c).size());
        if (prod > static_cast<unsigned __int128>(budget))
            throw BudgetExceededError("class-size product exceeds oracle budget");
        if (prod == 0) return std::nullopt;  // empty class: no transversal
    }
    std::vector<Vertex> chosen;
    chosen.reserve(m);
    auto backtrack = [&](auto&& self, ClassId c) -> bool {
        if (c == m) return true;
        for (Vertex v : g.class_vertices(c)) {
            bool ok = true;
            for (Vertex u : chosen)
                if (g.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(v);
            if (self(self, c + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (backtrack(backtrack, 0)) return chosen;
    return std::nullopt;
}

// Exhaustive search for |A| pairwise disjoint edges saturating A. Returns
// edge indices into h.edges, or nullopt.
inline std::optional<std::vector<int>> brute_force_perfect_matching(const Hypergraph& h) {
    if (h.a_count > 12)
        throw BudgetExceededError("perfect-matching oracle limited to |A| <= 12");
    std::vector<std::vector<int>> incident(h.a_count);
    for (int i = 0; i < static_cast<int>(h.edges.size()); ++i)
        incident[h.edges[i].a].push_back(i);
    std::vector<char> used_b(h.b_count, 0);
    std::vector<int> picked;
    auto backtrack = [&](auto&& self, int a) -> bool {
        if (a == h.a_count) return true;
        for (int idx : incident[a]) {
            const auto& bs = h.edges[idx].bset;
            bool free = true;
            for (int b : bs)
                if (used_b[b]) {
                    free = false;
                    break;
                }
            if (!free) continue;
            for (int b : bs) used_b[b] = 1;
            picked.push_back(idx);
            if (self(self, a + 1)) return true;
            picked.pop_back();
            for (int b : bs) used_b[b] = 0;
        }
        return false;
    };
    if (backtrack(backtrack, 0)) return picked;
    return std::nullopt;
}

// ---- verifiers for the application outcomes ----

inline VerificationReport verify_matching(const Hypergraph& h, const std::vector<int>& edge_indices) {
    VerificationReport rep;
    auto fail = [&](const std::string& name, const std::string& detail) {
        rep.violations.emplace_back(name, detail);
    };
    std::vector<int> a_seen(h.a_count, 0);
    std::vector<int> b_seen(h.b_count, 0);
    for (int idx : edge_indices) {
        if (idx < 0 || idx >= static_cast<int>(h.edges.size())) {
            fail("format", "edge index " + std::to_string(idx) + " out of range");
            continue;
        }
        ++a_seen[h.edges[idx].a];
        for (int b : h.edges[idx].bset) ++b_seen[b];
    }
    for (int a = 0; a < h.a_count; ++a)
        if (a_seen[a] != 1) fail("saturation", "A-vertex " + std::to_string(a) + " matched " +
                                                   std::to_string(a_seen[a]) + " times");
    for (int b = 0; b < h.b_count; ++b)
        if (b_seen[b] > 1) fail("disjointness", "B-vertex " + std::to_string(b) + " reused");
    rep.ok = rep.violations.empty();
    return rep;
}

inline VerificationReport verify_cover(const Hypergraph& h, const std::vector<int>& s,
                                       const std::vector<int>& t, int r, const Rational& eps) {
    VerificationReport rep;
    auto fail = [&](const std::string& name, const std::string& detail) {
        rep.violations.emplace_back(name, detail);
    };
    std::set<int> sset(s.begin(), s.end());
    std::set<int> tset(t.begin(), t.end());
    for (const auto& e : h.edges) {
        if (!sset.count(e.a)) continue;
        bool hit = false;
        for (int b : e.bset)
            if (tset.count(b)) {
                hit = true;
                break;
            }
        if (!hit) {
            fail("cover", "an edge at A-vertex " + std::to_string(e.a) + " avoids T");
            break;
        }
    }
    if (!(Rational(static_cast<long>(tset.size())) <=
          (2 * r - 3 + eps) * (static_cast<long>(sset.size()) - 1)))
        fail("cover-size", "|T| exceeds (2r-3+eps)(|S|-1)");
    rep.ok = rep.violations.empty();
    return rep;
}

inline VerificationReport verify_strong_colouring(const PartitionedGraph& g,
                                                  const std::vector<int>& colour_of, int k) {
    VerificationReport rep;
    auto fail = [&](const std::string& name, const std::string& detail) {
        rep.violations.emplace_back(name, detail);
    };
    if (static_cast<int>(colour_of.size()) != g.vertex_count()) {
        fail("format", "colour vector size mismatch");
        rep.ok = false;
        return rep;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (colour_of[v] < 0 || colour_of[v] >= k)
            fail("range", "vertex " + std::to_string(v) + " has colour outside 0..k-1");
    for (auto [u, v] : g.edge_list())
        if (colour_of[u] == colour_of[v])
            fail("properness", "adjacent vertices " + std::to_string(u) + "," +
                                   std::to_string(v) + " share a colour");
    for (ClassId c = 0; c < g.class_count(); ++c) {
        std::set<int> used;
        for (Vertex v : g.class_vertices(c))
            if (!used.insert(colour_of[v]).second)
                fail("class-injectivity",
                     "colour repeated inside class " + std::to_string(c));
    }
    rep.ok = rep.violations.empty();
    return rep;
}

} // namespace itkit
