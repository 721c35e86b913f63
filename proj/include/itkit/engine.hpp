#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "itkit/certificate.hpp"
#include "itkit/certify.hpp"
#include "itkit/floor_log.hpp"
#include "itkit/graph.hpp"
#include "itkit/params.hpp"

namespace itkit {

// Partial independent transversal: an independent set with at most one vertex
// per class. Independence is maintained by the engine, not re-checked here.
class Pit {
public:
    Pit() = default;
    Pit(int num_classes, int num_vertices)
        : by_class_(num_classes, -1), member_(num_vertices, 0) {}

    bool contains(Vertex v) const { return member_[v] != 0; }
    bool covers(ClassId c) const { return by_class_[c] >= 0; }
    Vertex vertex_in_class(ClassId c) const { return by_class_[c]; }
    int size() const { return size_; }

    void add(Vertex v, ClassId c) {
        assert(by_class_[c] < 0 && !member_[v]);
        by_class_[c] = v;
        member_[v] = 1;
        ++size_;
    }
    void remove(Vertex v, ClassId c) {
        assert(by_class_[c] == v);
        by_class_[c] = -1;
        member_[v] = 0;
        --size_;
    }

    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < static_cast<int>(member_.size()); ++v)
            if (member_[v]) out.push_back(v);
        return out;
    }

private:
    std::vector<Vertex> by_class_;
    std::vector<char> member_;
    int size_ = 0;
};

// One layer: a candidate set X (independent, disjoint from the transversal)
// together with its blockers Y; every blocker is adjacent to exactly one
// X-vertex. Both sides sorted.
struct Layer {
    std::vector<Vertex> x;
    std::vector<Vertex> y;
};

// Rooted layered structure grown from an uncovered class. layers[i] holds
// L_{i+1}; L_0 = (empty, empty) is implicit with the root class standing in
// for the classes of Y_0.
struct AlternatingTree {
    ClassId root_class = -1;
    std::vector<Layer> layers;

    int depth() const { return static_cast<int>(layers.size()); }

    AlternatingTree prefix(int len) const {
        AlternatingTree t;
        t.root_class = root_class;
        t.layers.assign(layers.begin(), layers.begin() + len);
        return t;
    }
};

// Per-layer pairs of floored base-b logarithms of |X_i| and |Y_i|; the
// lexicographic termination potential. Instrumentation only: engine control
// flow never reads it.
struct Signature {
    std::vector<std::pair<BigInt, BigInt>> entries;

    // Lexicographic compare with an implicit +infinity terminator, so a
    // proper extension compares smaller.
    static int lex_compare(const Signature& a, const Signature& b) {
        auto flat = [](const Signature& s, std::size_t i) -> const BigInt* {
            std::size_t pair_idx = i / 2;
            if (pair_idx >= s.entries.size()) return nullptr;
            return i % 2 == 0 ? &s.entries[pair_idx].first : &s.entries[pair_idx].second;
        };
        for (std::size_t i = 0;; ++i) {
            const BigInt* x = flat(a, i);
            const BigInt* y = flat(b, i);
            if (!x && !y) return 0;
            if (!x) return 1;   // a reached +inf first
            if (!y) return -1;
            int c = cmp(*x, *y);
            if (c != 0) return c;
        }
    }
};

struct TraceRecord {
    ClassId root_class = -1;
    std::uint64_t iteration = 0;  // within one transversal-growing run
    int depth = 0;
    Signature signature;
    std::vector<std::string> violations;  // named invariant failures, expected empty
};

struct Trace {
    std::vector<TraceRecord> records;

    bool clean() const {
        for (const auto& r : records)
            if (!r.violations.empty()) return false;
        return true;
    }
    std::size_t violation_count() const {
        std::size_t n = 0;
        for (const auto& r : records) n += r.violations.size();
        return n;
    }
};

// Vertices of w, outside the transversal, with no blocker.
inline std::vector<Vertex> immediately_addable(const std::vector<Vertex>& w, const Pit& m,
                                               const PartitionedGraph& g) {
    std::vector<Vertex> out;
    for (Vertex v : w) {
        if (m.contains(v)) continue;
        bool blocked = false;
        for (Vertex u : g.neighbours(v))
            if (m.contains(u)) {
                blocked = true;
                break;
            }
        if (!blocked) out.push_back(v);
    }
    return out;
}

namespace detail {

// Classes of Y_ell for the prefix (L_0..L_ell); the root class for ell = 0.
inline std::vector<ClassId> frontier_classes(const AlternatingTree& tree, int ell,
                                             const PartitionedGraph& g) {
    std::vector<ClassId> cs;
    if (ell == 0) {
        cs.push_back(tree.root_class);
        return cs;
    }
    for (Vertex y : tree.layers[ell - 1].y) cs.push_back(g.class_of(y));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

inline std::uint64_t total_y(const AlternatingTree& tree, int upto) {
    std::uint64_t s = 0;
    for (int i = 0; i < upto; ++i) s += tree.layers[i].y.size();
    return s;
}

inline void insert_sorted(std::vector<Vertex>& v, Vertex x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

} // namespace detail

// The four addability conditions for a partially built layer (x, y) on top of
// the whole of `tree`: v sits in a frontier class, is not a member of
// Y_last/x/y, its class holds fewer than U vertices of x, and it has no
// neighbour anywhere in the tree or in (x, y).
inline bool is_addable(Vertex v, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
                       const AlternatingTree& tree, [[maybe_unused]] const Pit& m,
                       const PartitionedGraph& g, const EngineParams& params) {
    const int ell = tree.depth();
    const ClassId cls = g.class_of(v);
    bool in_frontier = false;
    if (ell == 0) {
        in_frontier = cls == tree.root_class;
    } else {
        for (Vertex u : tree.layers[ell - 1].y)
            if (g.class_of(u) == cls) {
                in_frontier = true;
                break;
            }
    }
    if (!in_frontier) return false;

    if (ell > 0 && std::binary_search(tree.layers[ell - 1].y.begin(),
                                      tree.layers[ell - 1].y.end(), v))
        return false;
    if (std::binary_search(x.begin(), x.end(), v)) return false;
    if (std::binary_search(y.begin(), y.end(), v)) return false;

    long in_class = 0;
    for (Vertex u : x)
        if (g.class_of(u) == cls) ++in_class;
    if (!(Rational(in_class) < params.u)) return false;

    for (Vertex u : g.neighbours(v)) {
        if (std::binary_search(x.begin(), x.end(), u)) return false;
        if (std::binary_search(y.begin(), y.end(), u)) return false;
        for (const Layer& lay : tree.layers) {
            if (std::binary_search(lay.x.begin(), lay.x.end(), u)) return false;
            if (std::binary_search(lay.y.begin(), lay.y.end(), u)) return false;
        }
    }
    return true;
}

// Grows (x, y) to its fixed point, always taking the lowest-id addable vertex
// and pulling in its blockers. Additions never create new addable vertices,
// so one ascending sweep realises the lowest-first fixed point.
inline Layer build_layer(const AlternatingTree& tree, const std::vector<Vertex>& x0,
                         const std::vector<Vertex>& y0, const Pit& m, const PartitionedGraph& g,
                         const EngineParams& params) {
    const int n = g.vertex_count();
    const int ell = tree.depth();
    std::vector<char> in_working(n, 0), near_tree(n, 0), in_y_last(n, 0);

    for (const Layer& lay : tree.layers) {
        for (Vertex u : lay.x)
            for (Vertex w : g.neighbours(u)) near_tree[w] = 1;
        for (Vertex u : lay.y)
            for (Vertex w : g.neighbours(u)) near_tree[w] = 1;
    }
    if (ell > 0)
        for (Vertex u : tree.layers[ell - 1].y) in_y_last[u] = 1;

    Layer out{x0, y0};
    std::vector<long> x_in_class(g.class_count(), 0);
    for (Vertex u : out.x) {
        in_working[u] = 1;
        ++x_in_class[g.class_of(u)];
        for (Vertex w : g.neighbours(u)) near_tree[w] = 1;
    }
    for (Vertex u : out.y) {
        in_working[u] = 1;
        for (Vertex w : g.neighbours(u)) near_tree[w] = 1;
    }

    std::vector<Vertex> candidates;
    for (ClassId c : detail::frontier_classes(tree, ell, g))
        for (Vertex v : g.class_vertices(c)) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end());

    for (Vertex v : candidates) {
        if (in_working[v] || in_y_last[v] || near_tree[v]) continue;
        if (!(Rational(x_in_class[g.class_of(v)]) < params.u)) continue;
        detail::insert_sorted(out.x, v);
        in_working[v] = 1;
        ++x_in_class[g.class_of(v)];
        for (Vertex w : g.neighbours(v)) near_tree[w] = 1;
        for (Vertex u : g.neighbours(v)) {
            if (!m.contains(u)) continue;
            detail::insert_sorted(out.y, u);
            in_working[u] = 1;
            for (Vertex w : g.neighbours(u)) near_tree[w] = 1;
        }
    }
    return out;
}

// Rebuilds layers bottom-up after the transversal changed; the first layer
// that grows by at least a (1+mu) factor replaces its old version and all
// later layers are discarded.
inline AlternatingTree superposed_build(AlternatingTree tree, const Pit& m,
                                        const PartitionedGraph& g, const EngineParams& params) {
    for (int i = 1; i <= tree.depth(); ++i) {
        const Layer& cur = tree.layers[i - 1];
        Layer rebuilt = build_layer(tree.prefix(i - 1), cur.x, cur.y, m, g, params);
        if (Rational(static_cast<long>(rebuilt.x.size())) >=
            (1 + params.mu) * static_cast<long>(cur.x.size())) {
            tree.layers.resize(i);
            tree.layers[i - 1] = std::move(rebuilt);
            return tree;
        }
    }
    return tree;
}

inline Signature signature_of(const AlternatingTree& tree, const EngineParams& params) {
    Signature sig;
    const Rational one_minus_mu = 1 - params.mu;
    Rational coef_x = Rational(1) / params.rho;  // rho^{-i} / (1-mu)^{i-1}, i = 1
    for (int i = 1; i <= tree.depth(); ++i) {
        const Layer& lay = tree.layers[i - 1];
        if (lay.x.empty() || lay.y.empty())
            throw PreconditionViolationError("signature requires nonempty layer sides");
        Rational qx = coef_x * static_cast<long>(lay.x.size());
        Rational qy = (coef_x / one_minus_mu) * static_cast<long>(lay.y.size());
        sig.entries.emplace_back(-floor_log(params.b, qx), floor_log(params.b, qy));
        coef_x /= params.rho * one_minus_mu;
    }
    return sig;
}

namespace detail {

// Aborts impossible non-termination. The counting bound on distinct
// signature vectors gives m^(R+2c); saturate at 2^62 since the bound is
// astronomically large for the standard tuples.
inline std::uint64_t iteration_guard(int num_classes, const EngineParams& params) {
    if (num_classes <= 1) return 64;
    const double mu = params.mu.get_d();
    const double rho = params.rho.get_d();
    const double b = params.b.get_d();
    const double c = 1.0 / std::log2(1.0 + rho * (1.0 - mu));
    const double log2b = std::log2(b);
    if (!(log2b > 0)) return std::uint64_t(1) << 62;
    const double r_const = 1.0 / log2b - c * (std::log2(rho) / log2b) -
                           c * (std::log2(1.0 - mu) / log2b);
    const double exponent = std::ceil(r_const + 2.0 * c);
    if (!(exponent > 0) || exponent > 62.0 / std::log2(double(num_classes)))
        return std::uint64_t(1) << 62;
    double guard = 4.0 * std::pow(double(num_classes), exponent);
    if (guard >= std::pow(2.0, 62.0)) return std::uint64_t(1) << 62;
    return static_cast<std::uint64_t>(guard);
}

// Invariant battery run at the end of every completed main-loop iteration in
// trace mode. Violation names are stable for the test suites.
inline void record_iteration(const AlternatingTree& tree, const Pit& m, const PartitionedGraph& g,
                             const EngineParams& params, std::optional<Signature>& prev,
                             Trace& trace, std::uint64_t iteration) {
    TraceRecord rec;
    rec.root_class = tree.root_class;
    rec.iteration = iteration;
    rec.depth = tree.depth();

    for (int i = 1; i <= tree.depth(); ++i) {
        const Layer& lay = tree.layers[i - 1];
        const long xs = static_cast<long>(lay.x.size());
        const long ys = static_cast<long>(lay.y.size());
        const long imm = static_cast<long>(immediately_addable(lay.x, m, g).size());
        if (Rational(imm) > params.mu * xs)
            rec.violations.push_back("collapsible-layer@" + std::to_string(i));
        if (!(Rational(ys) >= (1 - params.mu) * xs))
            rec.violations.push_back("y-lower-bound@" + std::to_string(i));
        Layer rebuilt = build_layer(tree.prefix(i - 1), lay.x, lay.y, m, g, params);
        if (!(Rational(static_cast<long>(rebuilt.x.size())) < (1 + params.mu) * xs))
            rec.violations.push_back("rebuild-growth@" + std::to_string(i));
        if (!(Rational(xs) > params.rho * static_cast<long>(total_y(tree, i - 1))))
            rec.violations.push_back("x-lower-bound@" + std::to_string(i));
    }

    rec.signature = signature_of(tree, params);
    for (std::size_t i = 0; i < rec.signature.entries.size(); ++i) {
        const auto& [sx, sy] = rec.signature.entries[i];
        if (cmp(abs(sx), abs(sy)) > 0)
            rec.violations.push_back("signature-absval@" + std::to_string(2 * i + 1));
        if (i + 1 < rec.signature.entries.size() &&
            cmp(abs(sy), abs(rec.signature.entries[i + 1].first)) > 0)
            rec.violations.push_back("signature-absval@" + std::to_string(2 * i + 2));
    }
    if (prev && Signature::lex_compare(rec.signature, *prev) >= 0)
        rec.violations.push_back("signature-lex");
    prev = rec.signature;

    // layer count: (1 + rho(1-mu))^depth < m, exactly
    Rational growth = 1 + params.rho * (1 - params.mu);
    Rational powed = 1;
    for (int i = 0; i < tree.depth(); ++i) powed *= growth;
    if (!(powed < Rational(g.class_count())))
        rec.violations.push_back("layer-count");

    trace.records.push_back(std::move(rec));
}

} // namespace detail

struct GrowResult {
    Pit m;
    AlternatingTree tree;
    int flag = 0;  // 0: root class augmented; 1: thin layer, extract a certificate
};

// The main transversal-augmentation loop: build a fresh layer; stop with
// flag 1 when it comes out thin relative to the tree, otherwise collapse
// layers (swapping unblocked vertices into the transversal) until nothing is
// collapsible, re-running the superposed rebuild after each collapse.
inline GrowResult grow_transversal(Pit m, ClassId root_class, const PartitionedGraph& g,
                                   const EngineParams& params, Trace* trace = nullptr) {
    if (m.covers(root_class))
        throw PreconditionViolationError("root class already covered by the transversal");

    AlternatingTree tree;
    tree.root_class = root_class;
    const std::uint64_t guard = detail::iteration_guard(g.class_count(), params);
    std::uint64_t iteration = 0;
    std::optional<Signature> prev_signature;

    while (!m.covers(root_class)) {
        if (++iteration > guard)
            throw InternalInvariantViolationError("iteration guard exceeded");

        const std::uint64_t y_below = detail::total_y(tree, tree.depth());
        Layer next = build_layer(tree, {}, {}, m, g, params);
        tree.layers.push_back(std::move(next));

        if (Rational(static_cast<long>(tree.layers.back().x.size())) <=
            params.rho * static_cast<long>(y_below))
            return {std::move(m), std::move(tree), 1};

        for (;;) {
            const Layer& last = tree.layers.back();
            std::vector<Vertex> imm = immediately_addable(last.x, m, g);
            if (!(Rational(static_cast<long>(imm.size())) >
                  params.mu * static_cast<long>(last.x.size())))
                break;

            if (tree.depth() == 1) {
                Vertex v = imm.front();
                m.add(v, g.class_of(v));
                return {std::move(m), std::move(tree), 0};
            }

            // Collapse: the addable snapshot is taken once; X_last is
            // independent and removals only unblock, so the swaps commute.
            Layer& below = tree.layers[tree.depth() - 2];
            const std::vector<Vertex> blockers = below.y;
            for (Vertex w : blockers) {
                const ClassId cls = g.class_of(w);
                Vertex u = -1;
                for (Vertex cand : imm)
                    if (g.class_of(cand) == cls) {
                        u = cand;
                        break;
                    }
                if (u < 0) continue;
                m.remove(w, cls);
                m.add(u, cls);
                below.y.erase(std::find(below.y.begin(), below.y.end(), w));
            }
            tree.layers.pop_back();
            tree = superposed_build(std::move(tree), m, g, params);
        }

        if (trace)
            detail::record_iteration(tree, m, g, params, prev_signature, *trace, iteration);
    }
    throw InternalInvariantViolationError("transversal loop left without termination");
}

// Turns a flag-1 tree (L_0..L_{l+1}) into the dominated-classes certificate:
// prune B0 down to B, assemble the dominating set from the rebuilt layers,
// the thin last layer and one neighbour per immediately addable vertex, and
// read the constellation off the blocked part of the tree.
inline BdCertificate extract_bd(const AlternatingTree& tree, const Pit& m,
                                const PartitionedGraph& g, const EngineParams& params) {
    if (tree.depth() < 1)
        throw PreconditionViolationError("certificate extraction needs a built layer");
    const int ell = tree.depth() - 1;

    std::vector<Layer> rebuilt(ell);
    for (int i = 1; i <= ell; ++i)
        rebuilt[i - 1] =
            build_layer(tree.prefix(i - 1), tree.layers[i - 1].x, tree.layers[i - 1].y, m, g, params);

    std::set<ClassId> b0;
    b0.insert(tree.root_class);
    for (int i = 1; i <= ell; ++i)
        for (Vertex y : tree.layers[i - 1].y) b0.insert(g.class_of(y));

    std::set<ClassId> b = b0;
    std::map<ClassId, long> x_total;  // over X_{<= l+1}
    for (int i = 1; i <= ell + 1; ++i)
        for (Vertex x : tree.layers[i - 1].x) ++x_total[g.class_of(x)];
    for (auto [cls, cnt] : x_total)
        if (Rational(cnt) >= params.u) b.erase(cls);
    for (int i = 1; i <= ell; ++i) {
        const auto& orig = tree.layers[i - 1].x;
        for (Vertex x : rebuilt[i - 1].x)
            if (!std::binary_search(orig.begin(), orig.end(), x)) b.erase(g.class_of(x));
    }

    std::set<Vertex> w;
    for (int i = 1; i <= ell; ++i) {
        w.insert(rebuilt[i - 1].x.begin(), rebuilt[i - 1].x.end());
        w.insert(rebuilt[i - 1].y.begin(), rebuilt[i - 1].y.end());
    }
    w.insert(tree.layers[ell].x.begin(), tree.layers[ell].x.end());
    w.insert(tree.layers[ell].y.begin(), tree.layers[ell].y.end());

    std::vector<Vertex> w_vec(w.begin(), w.end());
    std::set<Vertex> s;
    for (Vertex v : immediately_addable(w_vec, m, g)) {
        if (g.neighbours(v).empty())
            throw InternalInvariantViolationError("isolated vertex inside engine graph");
        s.insert(g.neighbours(v).front());  // lowest-id neighbour
    }

    std::set<Vertex> d = w;
    d.insert(s.begin(), s.end());

    std::vector<Star> stars;
    for (int i = 1; i <= ell; ++i) {
        const Layer& lay = tree.layers[i - 1];
        std::vector<Vertex> imm = immediately_addable(lay.x, m, g);
        for (Vertex x : lay.x) {
            if (std::binary_search(imm.begin(), imm.end(), x)) continue;
            Star st;
            st.center = x;
            for (Vertex y : lay.y)
                if (g.adjacent(x, y)) st.leaves.push_back(y);
            stars.push_back(std::move(st));
        }
    }
    std::sort(stars.begin(), stars.end(),
              [](const Star& a, const Star& b) { return a.center < b.center; });

    BdCertificate cert;
    cert.b_classes.assign(b.begin(), b.end());
    cert.b0_classes.assign(b0.begin(), b0.end());
    cert.dominating.assign(d.begin(), d.end());
    cert.constellation = std::move(stars);
    cert.params = params;

    VerificationReport rep = verify_bd(g, cert);
    if (!rep.ok) {
        std::string what = "extracted certificate failed verification:";
        for (const auto& [name, detail] : rep.violations) what += " [" + name + "] " + detail;
        throw CertificateViolationError(what);
    }
    return cert;
}

// Covers the classes in increasing id order; the swaps inside the growth loop
// never uncover a class, so a single pass suffices. The caller is responsible
// for re-inserting any vertices recorded during normalization.
inline Certificate find_it_or_bd(const PartitionedGraph& g, const EngineParams& params,
                                 Trace* trace = nullptr) {
    Pit m(g.class_count(), g.vertex_count());
    for (ClassId c = 0; c < g.class_count(); ++c) {
        if (m.covers(c)) continue;
        GrowResult res = grow_transversal(std::move(m), c, g, params, trace);
        m = std::move(res.m);
        if (res.flag == 1)
            return Certificate{extract_bd(res.tree, m, g, params)};
    }
    ItCertificate it;
    for (ClassId c = 0; c < g.class_count(); ++c) {
        if (!m.covers(c))
            throw InternalInvariantViolationError("class left uncovered without certificate");
        it.transversal.emplace_back(c, m.vertex_in_class(c));
    }
    return Certificate{std::move(it)};
}

} // namespace itkit
