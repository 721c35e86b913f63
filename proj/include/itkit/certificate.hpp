#pragma once

#include <variant>
#include <vector>

#include "itkit/graph.hpp"
#include "itkit/params.hpp"

namespace itkit {

struct Star {
    Vertex center = -1;
    std::vector<Vertex> leaves;  // sorted, nonempty
};

struct ItCertificate {
    // (class id, chosen vertex), sorted by class id, one entry per class.
    std::vector<std::pair<ClassId, Vertex>> transversal;
};

// Witness that the classes B induce a subgraph dominated by the small set D,
// with the constellation K over B0 accounting for almost all of D.
struct BdCertificate {
    std::vector<ClassId> b_classes;    // B, sorted
    std::vector<ClassId> b0_classes;   // B0 with B subset of B0, sorted
    std::vector<Vertex> dominating;    // D, sorted
    std::vector<Star> constellation;   // K, sorted by center
    EngineParams params;
};

struct Certificate {
    std::variant<ItCertificate, BdCertificate> value;

    bool is_it() const { return std::holds_alternative<ItCertificate>(value); }
    const ItCertificate& it() const { return std::get<ItCertificate>(value); }
    const BdCertificate& bd() const { return std::get<BdCertificate>(value); }
};

} // namespace itkit
