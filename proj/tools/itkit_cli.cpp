// Command-line front end: instance parsing, random generators, engine
// invocation, certificate emission and verification.
//
// Exit codes: 0 success / transversal found, 2 certified negative outcome
// (dominated classes, cover), 1 errors and failed verification.

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "itkit/apps.hpp"
#include "itkit/certify.hpp"
#include "itkit/gen.hpp"
#include "itkit/io.hpp"
#include "itkit/solve.hpp"

namespace {

using namespace itkit;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << text;
}

void print_report(const VerificationReport& rep) {
    if (rep.ok) {
        std::cout << "ok\n";
        return;
    }
    for (const auto& [name, detail] : rep.violations)
        std::cout << "violation " << name << ": " << detail << "\n";
}

struct FinditOptions {
    std::vector<std::string> files;
    int r = -1;
    std::string eps, mu, u, rho;
    bool trace = false;
    bool check_claw_free = false;
    bool verify = false;
    int jobs = 1;
    std::string out_path;
};

int run_findit_one(const FinditOptions& opt, const std::string& path, std::string& line) {
    PartitionedGraph raw = load_instance(path);
    NormalizationReport norm = normalize(raw);

    if (norm.remaining.class_count() == 0) {
        // every class was extracted: the recorded vertices already form an IT
        SolveResult res = solve(raw, EngineParams::raw(2, 1, 1, 1, 1), false);
        if (opt.verify && !verify_it(raw, res.certificate.it().transversal).ok)
            throw CertificateViolationError("trivial transversal failed verification");
        line = certificate_to_json(res.certificate).dump();
        return kExitOk;
    }

    const int delta = norm.remaining.max_degree();
    const int r = opt.r > 0 ? opt.r : delta + 1;
    if (r < 2) throw PreconditionViolationError("r must be at least 2");
    const Rational eps = opt.eps.empty() ? Rational(1, delta) : parse_rational(opt.eps);

    const bool has_override = !opt.mu.empty() || !opt.u.empty() || !opt.rho.empty();
    EngineParams params;
    if (has_override) {
        if (opt.mu.empty() || opt.u.empty() || opt.rho.empty())
            throw PreconditionViolationError("--mu, --U and --rho must be given together");
        params = EngineParams::from_tuple(r, eps, parse_rational(opt.mu), parse_rational(opt.u),
                                          parse_rational(opt.rho));
    } else {
        params = EngineParams::for_epsilon(r, eps);
    }

    if (opt.check_claw_free) {
        if (auto witness = claw_free_witness(norm.remaining, r)) {
            std::string what = "graph is not " + std::to_string(r) + "-claw-free: vertex " +
                               std::to_string(norm.vertex_to_raw[witness->center]) +
                               " has independent neighbours";
            for (Vertex v : witness->leaves)
                what += " " + std::to_string(norm.vertex_to_raw[v]);
            throw PreconditionViolationError(what);
        }
    }

    SolveResult res = solve(raw, params, opt.trace);
    if (opt.trace) {
        std::cerr << path << ": " << res.trace.records.size() << " trace records, "
                  << res.trace.violation_count() << " violations\n";
        if (!res.trace.clean())
            throw InternalInvariantViolationError("trace invariants violated");
    }
    if (opt.verify) {
        VerificationReport rep = res.certificate.is_it()
                                     ? verify_it(raw, res.certificate.it().transversal)
                                     : verify_bd(raw, res.certificate.bd());
        if (!rep.ok) {
            for (const auto& [name, detail] : rep.violations)
                std::cerr << "violation " << name << ": " << detail << "\n";
            throw CertificateViolationError("certificate failed verification");
        }
    }
    line = certificate_to_json(res.certificate).dump();
    return res.certificate.is_it() ? kExitOk : kExitNegative;
}

int run_findit(const FinditOptions& opt) {
    struct Slot {
        int code = kExitError;
        std::string line;
        std::string error;
    };
    std::vector<Slot> slots(opt.files.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= opt.files.size()) return;
            try {
                slots[i].code = run_findit_one(opt, opt.files[i], slots[i].line);
            } catch (const std::exception& e) {
                slots[i].code = kExitError;
                slots[i].error = e.what();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(opt.files.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::string out;
    bool any_error = false, any_negative = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].error.empty()) {
            std::cerr << "error: " << opt.files[i] << ": " << slots[i].error << "\n";
            any_error = true;
            continue;
        }
        if (opt.files.size() > 1) out += opt.files[i] + "\t";
        out += slots[i].line + "\n";
        any_negative |= slots[i].code == kExitNegative;
    }
    emit(out, opt.out_path);
    return any_error ? kExitError : (any_negative ? kExitNegative : kExitOk);
}

int run_verify(const std::string& instance_path, const std::string& cert_path) {
    const std::string cert_text = read_file(cert_path);
    Json cj = Json::parse(cert_text);
    const std::string outcome = cj.at("outcome").get<std::string>();

    if (outcome == "it" || outcome == "bd") {
        PartitionedGraph g = load_instance(instance_path);
        Certificate cert = certificate_from_json(cj);
        VerificationReport rep = cert.is_it() ? verify_it(g, cert.it().transversal)
                                              : verify_bd(g, cert.bd());
        print_report(rep);
        return rep.ok ? kExitOk : kExitError;
    }
    if (outcome == "matching") {
        Hypergraph h = load_hypergraph(instance_path);
        std::vector<int> indices;
        VerificationReport rep;
        for (const auto& ej : cj.at("edges")) {
            Hypergraph::Edge e;
            std::vector<int> verts = ej.get<std::vector<int>>();
            if (verts.empty()) throw ParseError("empty matching edge");
            e.a = verts.front();
            e.bset.assign(verts.begin() + 1, verts.end());
            std::sort(e.bset.begin(), e.bset.end());
            auto it = std::lower_bound(h.edges.begin(), h.edges.end(), e);
            if (it == h.edges.end() || !(*it == e)) {
                rep.violations.emplace_back("format", "edge not present in the hypergraph");
                continue;
            }
            indices.push_back(static_cast<int>(it - h.edges.begin()));
        }
        if (rep.violations.empty()) rep = verify_matching(h, indices);
        rep.ok = rep.violations.empty();
        print_report(rep);
        return rep.ok ? kExitOk : kExitError;
    }
    if (outcome == "cover") {
        Hypergraph h = load_hypergraph(instance_path);
        auto s = cj.at("S").get<std::vector<int>>();
        auto t = cj.at("T").get<std::vector<int>>();
        Rational eps = parse_rational(cj.at("params").at("eps").get<std::string>());
        VerificationReport rep = verify_cover(h, s, t, h.r, eps);
        print_report(rep);
        return rep.ok ? kExitOk : kExitError;
    }
    if (outcome == "colouring") {
        PartitionedGraph g = load_instance(instance_path);
        std::vector<int> colours(g.vertex_count(), -1);
        for (auto& [key, val] : cj.at("colours").items()) {
            int v = std::stoi(key);
            if (v < 0 || v >= g.vertex_count()) throw ParseError("colour entry out of range");
            colours[v] = val.get<int>();
        }
        VerificationReport rep = verify_strong_colouring(g, colours, cj.at("k").get<int>());
        print_report(rep);
        return rep.ok ? kExitOk : kExitError;
    }
    if (outcome == "hitting") {
        PartitionedGraph g = load_instance(instance_path);
        auto set = cj.at("set").get<std::vector<Vertex>>();
        VerificationReport rep;
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (set[i] < 0 || set[i] >= g.vertex_count()) {
                rep.violations.emplace_back("format", "vertex out of range");
                continue;
            }
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (g.adjacent(set[i], set[j]))
                    rep.violations.emplace_back("independence", "hitting set is not independent");
        }
        for (const auto& clique : enumerate_maximum_cliques(g)) {
            bool hit = false;
            for (Vertex v : set)
                if (std::binary_search(clique.begin(), clique.end(), v)) hit = true;
            if (!hit) {
                rep.violations.emplace_back("hitting", "a maximum clique avoids the set");
                break;
            }
        }
        rep.ok = rep.violations.empty();
        print_report(rep);
        return rep.ok ? kExitOk : kExitError;
    }
    throw ParseError("unknown certificate outcome '" + outcome + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"independent transversals, dominating-set certificates and applications"};
    app.require_subcommand(1);

    FinditOptions fopt;
    CLI::App* findit = app.add_subcommand(
        "findit", "find an independent transversal or a dominated class set");
    findit->add_option("files", fopt.files, "instance files")->required()->expected(-1);
    findit->add_option("--r", fopt.r, "claw-freeness parameter (default: maxdeg+1)");
    findit->add_option("--eps", fopt.eps, "epsilon as p/q (default: 1/maxdeg)");
    findit->add_option("--mu", fopt.mu, "threshold override (needs --U and --rho)");
    findit->add_option("--U", fopt.u, "threshold override");
    findit->add_option("--rho", fopt.rho, "threshold override");
    findit->add_flag("--trace", fopt.trace, "record per-iteration invariants");
    findit->add_flag("--check-claw-free", fopt.check_claw_free,
                     "reject inputs with an r-claw witness");
    findit->add_flag("--verify", fopt.verify, "re-check the certificate before printing");
    findit->add_option("--jobs", fopt.jobs, "run instances in parallel");
    findit->add_option("-o,--output", fopt.out_path, "write output here instead of stdout");

    std::string match_file, match_eps = "1/2", match_out;
    bool match_verify = false;
    CLI::App* match = app.add_subcommand("match", "perfect matching in an r-uniform "
                                                  "bipartite hypergraph, or a small cover");
    match->add_option("file", match_file, "hypergraph instance")->required();
    match->add_option("--eps", match_eps, "epsilon as p/q");
    match->add_flag("--verify", match_verify, "re-check the outcome before printing");
    match->add_option("-o,--output", match_out, "output path");

    std::string sc_file, sc_out;
    int sc_delta = -1;
    bool sc_verify = false;
    CLI::App* strongcolour =
        app.add_subcommand("strongcolour", "strong (3*delta+1)-colouring of the partition");
    strongcolour->add_option("file", sc_file, "instance")->required();
    strongcolour->add_option("--delta", sc_delta, "degree bound (default: graph max degree)");
    strongcolour->add_flag("--verify", sc_verify, "re-check the colouring");
    strongcolour->add_option("-o,--output", sc_out, "output path");

    std::string ch_file, ch_out;
    int ch_delta = -1;
    CLI::App* cliquehit = app.add_subcommand(
        "cliquehit", "independent set meeting every maximum clique");
    cliquehit->add_option("file", ch_file, "instance")->required();
    cliquehit->add_option("--delta", ch_delta, "degree bound (default: graph max degree)");
    cliquehit->add_option("-o,--output", ch_out, "output path");

    std::string ver_instance, ver_cert;
    CLI::App* verify = app.add_subcommand("verify", "check a certificate against an instance");
    verify->add_option("instance", ver_instance, "instance file")->required();
    verify->add_option("certificate", ver_cert, "certificate JSON file")->required();

    std::string gen_kind, gen_out;
    std::uint64_t gen_seed = 0;
    int gen_delta = 2, gen_classes = 4, gen_class_size = -1, gen_r = 3;
    int gen_na = 6, gen_nb = 6, gen_edges = 12;
    int gen_omega = 4, gen_cliques = 2, gen_filler = 4;
    bool gen_cross = false, gen_json = false;
    CLI::App* gen = app.add_subcommand("gen", "deterministic instance generators");
    gen->add_option("--kind", gen_kind,
                    "random-partitioned | complete-bipartite-pair | hypergraph-random | "
                    "clique-planted")
        ->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--delta", gen_delta, "degree bound");
    gen->add_option("--classes", gen_classes, "number of classes");
    gen->add_option("--class-size", gen_class_size, "class size (default 2*delta+1)");
    gen->add_option("--r", gen_r, "hypergraph uniformity");
    gen->add_option("--na", gen_na, "A-side size");
    gen->add_option("--nb", gen_nb, "B-side size");
    gen->add_option("--edges", gen_edges, "hyperedge count");
    gen->add_option("--omega", gen_omega, "planted clique size");
    gen->add_option("--cliques", gen_cliques, "planted clique count");
    gen->add_option("--filler", gen_filler, "filler vertex count");
    gen->add_flag("--cross", gen_cross, "matching edges between clique pairs");
    gen->add_flag("--json", gen_json, "emit the JSON mirror of the instance format");
    gen->add_option("-o,--output", gen_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (findit->parsed()) return run_findit(fopt);
        if (match->parsed()) {
            Hypergraph h = load_hypergraph(match_file);
            MatchOutcome out = hypergraph_match(h, parse_rational(match_eps));
            if (match_verify) {
                VerificationReport rep =
                    out.is_matching()
                        ? verify_matching(h, out.matching().edge_indices)
                        : verify_cover(h, out.cover().s, out.cover().t, h.r, out.cover().eps);
                if (!rep.ok) throw CertificateViolationError("outcome failed verification");
            }
            emit(match_outcome_to_json(out, h).dump() + "\n", match_out);
            return out.is_matching() ? kExitOk : kExitNegative;
        }
        if (strongcolour->parsed()) {
            PartitionedGraph g = load_instance(sc_file);
            const int delta = sc_delta >= 0 ? sc_delta : g.max_degree();
            StrongColouring sc = strong_colour(g, delta);
            if (sc_verify && !verify_strong_colouring(g, sc.colour_of, sc.k).ok)
                throw CertificateViolationError("colouring failed verification");
            emit(colouring_to_json(sc).dump() + "\n", sc_out);
            return kExitOk;
        }
        if (cliquehit->parsed()) {
            PartitionedGraph g = load_instance(ch_file);
            const int delta = ch_delta >= 0 ? ch_delta : g.max_degree();
            CliqueHittingSet hs = clique_hitting_set(g, delta);
            emit(hitting_to_json(hs).dump() + "\n", ch_out);
            return kExitOk;
        }
        if (verify->parsed()) return run_verify(ver_instance, ver_cert);
        if (gen->parsed()) {
            std::string text;
            if (gen_kind == "random-partitioned") {
                int size = gen_class_size > 0 ? gen_class_size : 2 * gen_delta + 1;
                PartitionedGraph g =
                    gen_random_partitioned(gen_seed, gen_delta, gen_classes, size);
                text = gen_json ? print_instance_json(g) : print_instance_text(g);
            } else if (gen_kind == "complete-bipartite-pair") {
                PartitionedGraph g = gen_complete_bipartite_pair(gen_delta);
                text = gen_json ? print_instance_json(g) : print_instance_text(g);
            } else if (gen_kind == "hypergraph-random") {
                Hypergraph h = gen_random_hypergraph(gen_seed, gen_r, gen_na, gen_nb, gen_edges);
                text = print_hypergraph_text(h);
            } else if (gen_kind == "clique-planted") {
                PartitionedGraph g = gen_clique_planted(gen_seed, gen_delta, gen_omega,
                                                        gen_cliques, gen_filler, gen_cross);
                text = gen_json ? print_instance_json(g) : print_instance_text(g);
            } else {
                throw ParseError("unknown generator kind '" + gen_kind + "'");
            }
            emit(text, gen_out);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
