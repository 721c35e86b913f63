#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "itkit/engine.hpp"
#include "itkit/graph.hpp"

namespace itkit {

struct SolveResult {
    Certificate certificate;  // in the raw instance's vertex/class ids
    NormalizationReport norm;
    Trace trace;
};

// Full pipeline over a raw instance: normalize, run the engine on the
// remaining graph, map ids back, and re-insert the recorded vertices of the
// extracted classes into any transversal.
inline SolveResult solve(const PartitionedGraph& raw, const EngineParams& params,
                         bool with_trace = false) {
    SolveResult out;
    out.norm = normalize(raw);

    if (out.norm.remaining.class_count() == 0) {
        ItCertificate it;
        for (auto [cls, v] : out.norm.extracted) it.transversal.emplace_back(cls, v);
        std::sort(it.transversal.begin(), it.transversal.end());
        out.certificate = Certificate{std::move(it)};
        return out;
    }

    Certificate inner = find_it_or_bd(out.norm.remaining, params,
                                      with_trace ? &out.trace : nullptr);
    if (inner.is_it()) {
        ItCertificate it;
        for (auto [cls, v] : inner.it().transversal)
            it.transversal.emplace_back(out.norm.class_to_raw[cls], out.norm.vertex_to_raw[v]);
        for (auto [cls, v] : out.norm.extracted) it.transversal.emplace_back(cls, v);
        std::sort(it.transversal.begin(), it.transversal.end());
        out.certificate = Certificate{std::move(it)};
        return out;
    }

    const BdCertificate& src = inner.bd();
    BdCertificate bd;
    bd.params = src.params;
    for (ClassId c : src.b_classes) bd.b_classes.push_back(out.norm.class_to_raw[c]);
    for (ClassId c : src.b0_classes) bd.b0_classes.push_back(out.norm.class_to_raw[c]);
    for (Vertex v : src.dominating) bd.dominating.push_back(out.norm.vertex_to_raw[v]);
    for (const Star& s : src.constellation) {
        Star t;
        t.center = out.norm.vertex_to_raw[s.center];
        for (Vertex v : s.leaves) t.leaves.push_back(out.norm.vertex_to_raw[v]);
        bd.constellation.push_back(std::move(t));
    }
    out.certificate = Certificate{std::move(bd)};
    return out;
}

} // namespace itkit
