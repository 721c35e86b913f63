#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "itkit/gen.hpp"
#include "itkit/io.hpp"

using namespace itkit;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "itkit_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args) {
    const fs::path out_file = scratch_dir() / "stdout.txt";
    const std::string cmd =
        std::string(ITKIT_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    CliRun run;
    run.exit_code = WEXITSTATUS(status);
    run.out = slurp(out_file);
    return run;
}

} // namespace

TEST_CASE("findit exits 2 with a dominated-classes certificate on K22") {
    const fs::path inst = scratch_dir() / "k22.txt";
    write_file(inst, print_instance_text(gen_complete_bipartite_pair(2)));
    CliRun run = run_cli("findit " + inst.string() + " --r 3 --eps 1/2 --verify");
    CHECK(run.exit_code == 2);
    Json j = Json::parse(run.out);
    CHECK(j.at("outcome") == "bd");
    // the emitted certificate verifies
    const fs::path cert = scratch_dir() / "k22.cert.json";
    write_file(cert, run.out);
    CHECK(run_cli("verify " + inst.string() + " " + cert.string()).exit_code == 0);
}

TEST_CASE("findit exits 0 through the extraction path on an edgeless instance") {
    const fs::path inst = scratch_dir() / "edgeless.txt";
    write_file(inst, "graph 3\nclass 0 0\nclass 1 1\nclass 2 2\n");
    CliRun run = run_cli("findit " + inst.string());
    CHECK(run.exit_code == 0);
    CHECK(Json::parse(run.out).at("outcome") == "it");
}

TEST_CASE("findit rejects r = 1") {
    const fs::path inst = scratch_dir() / "k22b.txt";
    write_file(inst, print_instance_text(gen_complete_bipartite_pair(2)));
    CHECK(run_cli("findit " + inst.string() + " --r 1").exit_code == 1);
}

TEST_CASE("findit honours the claw-free check") {
    // star with 3 leaves in distinct classes is not 3-claw-free
    const fs::path inst = scratch_dir() / "star.txt";
    write_file(inst,
               "graph 4\nclass 0 0\nclass 1 1\nclass 2 2\nclass 3 3\n"
               "edge 0 1\nedge 0 2\nedge 0 3\n");
    CHECK(run_cli("findit " + inst.string() + " --r 3 --eps 1/2 --check-claw-free").exit_code ==
          1);
    // at r = 4 there is no claw witness; the run proceeds and certifies that
    // this star has no transversal (the centre clashes with every leaf)
    CHECK(run_cli("findit " + inst.string() + " --r 4 --eps 1/2 --check-claw-free").exit_code ==
          2);
}

TEST_CASE("verify rejects a mutated certificate with a named violation") {
    const fs::path inst = scratch_dir() / "k22c.txt";
    write_file(inst, print_instance_text(gen_complete_bipartite_pair(2)));
    CliRun run = run_cli("findit " + inst.string() + " --r 3 --eps 1/2");
    REQUIRE(run.exit_code == 2);
    Json j = Json::parse(run.out);
    j["D"] = Json::array();  // drop the dominating set entirely
    const fs::path cert = scratch_dir() / "mutated.cert.json";
    write_file(cert, j.dump());
    CliRun ver = run_cli("verify " + inst.string() + " " + cert.string());
    CHECK(ver.exit_code == 1);
    CHECK(ver.out.find("domination") != std::string::npos);
}

TEST_CASE("match certifies Hall violators with exit 2") {
    const fs::path inst = scratch_dir() / "hall.txt";
    write_file(inst, "hypergraph 2\naside 0 1\nbside 0\nedge 0 0\nedge 1 0\n");
    CliRun run = run_cli("match " + inst.string() + " --eps 1/10 --verify");
    CHECK(run.exit_code == 2);
    Json j = Json::parse(run.out);
    CHECK(j.at("outcome") == "cover");
    CHECK(j.at("T").size() < j.at("S").size());
    // cover certificates verify against the instance
    const fs::path cert = scratch_dir() / "hall.cert.json";
    write_file(cert, run.out);
    CHECK(run_cli("verify " + inst.string() + " " + cert.string()).exit_code == 0);
}

TEST_CASE("match finds a matching when one exists") {
    const fs::path inst = scratch_dir() / "pm.txt";
    write_file(inst, "hypergraph 2\naside 0 1\nbside 0 1\nedge 0 0\nedge 0 1\nedge 1 0\n");
    CliRun run = run_cli("match " + inst.string() + " --eps 1/10 --verify");
    CHECK(run.exit_code == 0);
    const fs::path cert = scratch_dir() / "pm.cert.json";
    write_file(cert, run.out);
    CHECK(run_cli("verify " + inst.string() + " " + cert.string()).exit_code == 0);
}

TEST_CASE("strongcolour and cliquehit succeed and verify") {
    const fs::path inst = scratch_dir() / "sc.txt";
    write_file(inst, print_instance_text(gen_random_partitioned(3, 2, 3, 5)));
    CliRun run = run_cli("strongcolour " + inst.string() + " --delta 2 --verify");
    CHECK(run.exit_code == 0);
    const fs::path cert = scratch_dir() / "sc.cert.json";
    write_file(cert, run.out);
    CHECK(run_cli("verify " + inst.string() + " " + cert.string()).exit_code == 0);

    const fs::path planted = scratch_dir() / "planted.txt";
    write_file(planted, print_instance_text(gen_clique_planted(9, 3, 4, 2, 3, false)));
    CliRun hit = run_cli("cliquehit " + planted.string() + " --delta 3");
    CHECK(hit.exit_code == 0);
    const fs::path hit_cert = scratch_dir() / "hit.cert.json";
    write_file(hit_cert, hit.out);
    CHECK(run_cli("verify " + planted.string() + " " + hit_cert.string()).exit_code == 0);
}

TEST_CASE("gen is byte-identical across runs and round-trips") {
    CliRun a = run_cli("gen --kind random-partitioned --seed 7 --delta 2 --classes 4");
    CliRun b = run_cli("gen --kind random-partitioned --seed 7 --delta 2 --classes 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    PartitionedGraph g = parse_instance_text(a.out);
    CHECK(g.class_count() == 4);

    CliRun j1 = run_cli("gen --kind complete-bipartite-pair --delta 2 --json");
    CHECK(j1.exit_code == 0);
    CHECK(parse_instance_json(j1.out) == gen_complete_bipartite_pair(2));

    CliRun h1 = run_cli("gen --kind hypergraph-random --seed 3 --r 3 --na 4 --nb 6 --edges 8");
    CliRun h2 = run_cli("gen --kind hypergraph-random --seed 3 --r 3 --na 4 --nb 6 --edges 8");
    CHECK(h1.out == h2.out);
}

TEST_CASE("generated wide-class instances always admit transversals") {
    for (std::uint64_t seed = 40; seed < 44; ++seed) {
        const fs::path inst = scratch_dir() / ("wide" + std::to_string(seed) + ".txt");
        write_file(inst, print_instance_text(gen_random_partitioned(seed, 2, 5, 5)));
        CliRun run = run_cli("findit " + inst.string() + " --verify");
        CHECK(run.exit_code == 0);
        const fs::path cert = scratch_dir() / "wide.cert.json";
        write_file(cert, run.out);
        CHECK(run_cli("verify " + inst.string() + " " + cert.string()).exit_code == 0);
    }
}

TEST_CASE("findit fans out over multiple files with --jobs") {
    const fs::path i1 = scratch_dir() / "multi1.txt";
    const fs::path i2 = scratch_dir() / "multi2.txt";
    write_file(i1, print_instance_text(gen_random_partitioned(1, 2, 4, 5)));
    write_file(i2, print_instance_text(gen_complete_bipartite_pair(2)));
    CliRun run = run_cli("findit " + i1.string() + " " + i2.string() + " --r 3 --eps 1/2 --jobs 2");
    CHECK(run.exit_code == 2);  // one negative outcome dominates
    CHECK(run.out.find("multi1.txt\t") != std::string::npos);
    CHECK(run.out.find("multi2.txt\t") != std::string::npos);
}

TEST_CASE("the budget environment variable caps oracle work") {
    const fs::path inst = scratch_dir() / "budget.txt";
    write_file(inst, print_instance_text(gen_clique_planted(2, 5, 6, 3, 6, false)));
    const std::string cmd = "ITKIT_BUDGET=5 " + std::string(ITKIT_CLI_PATH) + " cliquehit " +
                            inst.string() + " --delta 5 >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);  // enumeration budget exhausted
    CHECK(run_cli("cliquehit " + inst.string() + " --delta 5").exit_code == 0);
}

TEST_CASE("byte-identical certificates across two CLI runs") {
    const fs::path inst = scratch_dir() / "det.txt";
    write_file(inst, print_instance_text(gen_random_partitioned(11, 3, 5, 7)));
    CliRun a = run_cli("findit " + inst.string());
    CliRun b = run_cli("findit " + inst.string());
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}
