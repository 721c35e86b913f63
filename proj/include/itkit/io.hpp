#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "itkit/apps.hpp"
#include "itkit/certificate.hpp"
#include "itkit/graph.hpp"
#include "itkit/hypergraph.hpp"
#include "itkit/rational.hpp"

namespace itkit {

using Json = nlohmann::json;

namespace detail {

// Token lines with '#' comments stripped; blank lines skipped.
inline std::vector<std::vector<std::string>> token_lines(const std::string& text) {
    std::vector<std::vector<std::string>> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

inline long parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw ParseError("");
        return v;
    } catch (...) {
        throw ParseError("expected integer for " + what + ", got '" + tok + "'");
    }
}

} // namespace detail

// ------------------------------------------------------------- instances

inline PartitionedGraph parse_instance_text(const std::string& text) {
    auto lines = detail::token_lines(text);
    if (lines.empty() || lines.front().front() != "graph")
        throw ParseError("instance must start with a 'graph <n>' line");
    long n = -1;
    std::map<long, std::vector<Vertex>> classes;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& toks : lines) {
        const std::string& kw = toks.front();
        if (kw == "graph") {
            if (toks.size() != 2) throw ParseError("graph line needs one count");
            if (n >= 0) throw ParseError("duplicate graph line");
            n = detail::parse_int(toks[1], "vertex count");
        } else if (kw == "class") {
            if (toks.size() < 2) throw ParseError("class line needs an id");
            long cid = detail::parse_int(toks[1], "class id");
            auto& vs = classes[cid];
            for (std::size_t i = 2; i < toks.size(); ++i)
                vs.push_back(static_cast<Vertex>(detail::parse_int(toks[i], "vertex")));
        } else if (kw == "edge") {
            if (toks.size() != 3) throw ParseError("edge line needs two endpoints");
            edges.emplace_back(static_cast<Vertex>(detail::parse_int(toks[1], "vertex")),
                               static_cast<Vertex>(detail::parse_int(toks[2], "vertex")));
        } else {
            throw ParseError("unknown declaration '" + kw + "'");
        }
    }
    if (n < 0) throw ParseError("missing graph line");
    std::vector<std::vector<Vertex>> class_list;
    long expect = 0;
    for (auto& [cid, vs] : classes) {
        if (cid != expect++)
            throw ParseError("class ids must be dense 0..m-1; missing or stray id " +
                             std::to_string(cid));
        class_list.push_back(std::move(vs));
    }
    return PartitionedGraph::build(static_cast<int>(n), std::move(class_list), edges);
}

inline std::string print_instance_text(const PartitionedGraph& g) {
    std::ostringstream out;
    out << "graph " << g.vertex_count() << "\n";
    for (ClassId c = 0; c < g.class_count(); ++c) {
        out << "class " << c;
        for (Vertex v : g.class_vertices(c)) out << " " << v;
        out << "\n";
    }
    for (auto [u, v] : g.edge_list()) out << "edge " << u << " " << v << "\n";
    return out.str();
}

inline PartitionedGraph parse_instance_json(const std::string& text) {
    Json j = Json::parse(text);
    long n = j.at("graph").get<long>();
    std::vector<std::vector<Vertex>> classes;
    for (const auto& cls : j.at("classes")) classes.push_back(cls.get<std::vector<Vertex>>());
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("edge entries must be pairs");
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return PartitionedGraph::build(static_cast<int>(n), std::move(classes), edges);
}

inline std::string print_instance_json(const PartitionedGraph& g) {
    Json j;
    j["graph"] = g.vertex_count();
    Json classes = Json::array();
    for (ClassId c = 0; c < g.class_count(); ++c) classes.push_back(g.class_vertices(c));
    j["classes"] = std::move(classes);
    Json edges = Json::array();
    for (auto [u, v] : g.edge_list()) edges.push_back(Json::array({u, v}));
    j["edges"] = std::move(edges);
    return j.dump();
}

inline bool path_is_json(const std::string& path) {
    return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

// --------------------------------------------------------- hypergraphs

inline Hypergraph parse_hypergraph_text(const std::string& text) {
    auto lines = detail::token_lines(text);
    if (lines.empty() || lines.front().front() != "hypergraph")
        throw ParseError("hypergraph instance must start with 'hypergraph <r>'");
    long r = -1;
    std::vector<int> aside, bside;
    std::vector<Hypergraph::Edge> edges;
    for (const auto& toks : lines) {
        const std::string& kw = toks.front();
        if (kw == "hypergraph") {
            if (toks.size() != 2) throw ParseError("hypergraph line needs the uniformity");
            if (r >= 0) throw ParseError("duplicate hypergraph line");
            r = detail::parse_int(toks[1], "uniformity");
        } else if (kw == "aside" || kw == "bside") {
            auto& side = kw == "aside" ? aside : bside;
            for (std::size_t i = 1; i < toks.size(); ++i)
                side.push_back(static_cast<int>(detail::parse_int(toks[i], "vertex")));
        } else if (kw == "edge") {
            if (r < 0) throw ParseError("edge before the hypergraph line");
            if (static_cast<long>(toks.size()) != 1 + r)
                throw ParseError("edge line needs one A-vertex and r-1 B-vertices");
            Hypergraph::Edge e;
            e.a = static_cast<int>(detail::parse_int(toks[1], "A-vertex"));
            for (std::size_t i = 2; i < toks.size(); ++i)
                e.bset.push_back(static_cast<int>(detail::parse_int(toks[i], "B-vertex")));
            edges.push_back(std::move(e));
        } else {
            throw ParseError("unknown declaration '" + kw + "'");
        }
    }
    auto check_dense = [](std::vector<int>& side, const std::string& name) {
        std::sort(side.begin(), side.end());
        side.erase(std::unique(side.begin(), side.end()), side.end());
        for (std::size_t i = 0; i < side.size(); ++i)
            if (side[i] != static_cast<int>(i))
                throw ParseError(name + " ids must be dense 0..k-1");
        return static_cast<int>(side.size());
    };
    int na = check_dense(aside, "aside");
    int nb = check_dense(bside, "bside");
    return Hypergraph::build(static_cast<int>(r), na, nb, std::move(edges));
}

inline std::string print_hypergraph_text(const Hypergraph& h) {
    std::ostringstream out;
    out << "hypergraph " << h.r << "\n";
    out << "aside";
    for (int a = 0; a < h.a_count; ++a) out << " " << a;
    out << "\n";
    out << "bside";
    for (int b = 0; b < h.b_count; ++b) out << " " << b;
    out << "\n";
    for (const auto& e : h.edges) {
        out << "edge " << e.a;
        for (int b : e.bset) out << " " << b;
        out << "\n";
    }
    return out.str();
}

// ------------------------------------------------------------ certificates

inline Json params_to_json(const EngineParams& p) {
    Json j;
    j["r"] = p.r;
    j["eps"] = rational_to_string(p.eps);
    j["mu"] = rational_to_string(p.mu);
    j["U"] = rational_to_string(p.u);
    j["rho"] = rational_to_string(p.rho);
    return j;
}

inline EngineParams params_from_json(const Json& j) {
    return EngineParams::raw(j.at("r").get<int>(), parse_rational(j.at("eps").get<std::string>()),
                             parse_rational(j.at("mu").get<std::string>()),
                             parse_rational(j.at("U").get<std::string>()),
                             parse_rational(j.at("rho").get<std::string>()));
}

inline Json certificate_to_json(const Certificate& cert) {
    Json j;
    if (cert.is_it()) {
        j["outcome"] = "it";
        Json tv = Json::object();
        for (auto [cls, v] : cert.it().transversal) tv[std::to_string(cls)] = v;
        j["transversal"] = std::move(tv);
        return j;
    }
    const BdCertificate& bd = cert.bd();
    j["outcome"] = "bd";
    j["B"] = bd.b_classes;
    j["B0"] = bd.b0_classes;
    j["D"] = bd.dominating;
    Json stars = Json::array();
    for (const Star& s : bd.constellation) {
        Json star;
        star["center"] = s.center;
        star["leaves"] = s.leaves;
        stars.push_back(std::move(star));
    }
    j["constellation"] = std::move(stars);
    j["params"] = params_to_json(bd.params);
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    const std::string outcome = j.at("outcome").get<std::string>();
    if (outcome == "it") {
        ItCertificate it;
        for (auto& [key, val] : j.at("transversal").items())
            it.transversal.emplace_back(static_cast<ClassId>(detail::parse_int(key, "class id")),
                                        val.get<Vertex>());
        std::sort(it.transversal.begin(), it.transversal.end());
        return Certificate{std::move(it)};
    }
    if (outcome != "bd") throw ParseError("unknown certificate outcome '" + outcome + "'");
    BdCertificate bd;
    bd.b_classes = j.at("B").get<std::vector<ClassId>>();
    bd.b0_classes = j.at("B0").get<std::vector<ClassId>>();
    bd.dominating = j.at("D").get<std::vector<Vertex>>();
    for (const auto& star : j.at("constellation")) {
        Star s;
        s.center = star.at("center").get<Vertex>();
        s.leaves = star.at("leaves").get<std::vector<Vertex>>();
        bd.constellation.push_back(std::move(s));
    }
    bd.params = params_from_json(j.at("params"));
    return Certificate{std::move(bd)};
}

inline Json match_outcome_to_json(const MatchOutcome& out, const Hypergraph& h) {
    Json j;
    if (out.is_matching()) {
        j["outcome"] = "matching";
        Json edges = Json::array();
        for (int idx : out.matching().edge_indices) {
            Json e = Json::array();
            e.push_back(h.edges[idx].a);
            for (int b : h.edges[idx].bset) e.push_back(b);
            edges.push_back(std::move(e));
        }
        j["edges"] = std::move(edges);
        return j;
    }
    const auto& cover = out.cover();
    j["outcome"] = "cover";
    j["S"] = cover.s;
    j["T"] = cover.t;
    j["S0"] = cover.s0;
    Json stars = Json::array();
    for (const Star& s : cover.constellation) {
        Json star;
        star["center"] = s.center;
        star["leaves"] = s.leaves;
        stars.push_back(std::move(star));
    }
    j["constellation"] = std::move(stars);
    j["params"] = Json{{"r", h.r}, {"eps", rational_to_string(cover.eps)}};
    return j;
}

inline Json colouring_to_json(const StrongColouring& sc) {
    Json j;
    j["outcome"] = "colouring";
    j["k"] = sc.k;
    Json colours = Json::object();
    for (Vertex v = 0; v < static_cast<int>(sc.colour_of.size()); ++v)
        colours[std::to_string(v)] = sc.colour_of[v];
    j["colours"] = std::move(colours);
    return j;
}

inline Json hitting_to_json(const CliqueHittingSet& hs) {
    Json j;
    j["outcome"] = "hitting";
    j["set"] = hs.hitting;
    j["cliques"] = hs.cliques;
    return j;
}

// ----------------------------------------------------------------- files

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline PartitionedGraph load_instance(const std::string& path) {
    const std::string text = read_file(path);
    return path_is_json(path) ? parse_instance_json(text) : parse_instance_text(text);
}

inline Hypergraph load_hypergraph(const std::string& path) {
    return parse_hypergraph_text(read_file(path));
}

} // namespace itkit
