#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "swisscheese/serialize.hpp"
#include "test_support.hpp"

using namespace swisscheese;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("SWISSCHEESE_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SWISSCHEESE_CLI must point at the binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const fs::path log = fs::temp_directory_path() /
                         ("swisscheese_cli_" + std::to_string(counter++) + ".log");
    const std::string cmd = cli_path() + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.output = read_file(log.string());
    fs::remove(log);
    return r;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "swisscheese_cli_tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("check: exit codes 0, 1 and 2") {
    const fs::path dir = scratch_dir();

    const Cheese classical{Disk{{0, 0}, 2}, std::nullopt, {{{0.5, 0}, 0.4}}, 0.0};
    write_file((dir / "classical.json").string(), serialize_cheese(classical));
    CHECK(run("check " + (dir / "classical.json").string()).exit_code == 0);

    const Cheese tangent{Disk{{0, 0}, 2}, std::nullopt,
                         {{{-0.5, 0}, 0.5}, {{0.5, 0}, 0.5}}, 0.0};
    write_file((dir / "tangent.json").string(), serialize_cheese(tangent));
    const RunResult r = run("check " + (dir / "tangent.json").string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("1 intersecting pairs") != std::string::npos);

    write_file((dir / "broken.json").string(), "{not json");
    CHECK(run("check " + (dir / "broken.json").string()).exit_code == 2);
    CHECK(run("check " + (dir / "missing.json").string()).exit_code == 2);

    const RunResult j = run("check --json " + (dir / "classical.json").string());
    CHECK(j.exit_code == 0);
    CHECK(j.output.find("\"classical\": true") != std::string::npos);
}

TEST_CASE("classicalise: plain output passes check") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "rand.json";
    const fs::path out = dir / "rand.classical.json";
    write_file(in.string(), serialize_cheese(random_cheese(21, 30, 0.7)));

    CHECK(run("classicalise " + in.string() + " --out " + out.string()).exit_code == 0);
    CHECK(run("check " + out.string()).exit_code == 0);
    CHECK(fs::exists(out.string() + ".report.json"));

    const Cheese result = load_cheese(out.string());
    CHECK(is_classical(result));
}

TEST_CASE("classicalise: controlled precondition failure names the bound") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "pair.json";
    const Cheese c{Disk{{0, 0}, 1}, std::nullopt,
                   {{{0.3, 0}, 0.1}, {{0.5, 0}, 0.1}}, 0.0};
    write_file(in.string(), serialize_cheese(c));

    ControllingCollection tight;
    tight.pairs.push_back({region_disk({{0.4, 0}, 0.05}), 0.1});
    const fs::path regions = dir / "tight.regions.json";
    write_file(regions.string(), serialize_regions(tight));

    const RunResult r = run("classicalise " + in.string() + " --out " +
                            (dir / "out.json").string() +
                            " --mode controlled --regions " + regions.string());
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("rho_U_bound") != std::string::npos);

    // Mode needs its regions file.
    const RunResult r2 = run("classicalise " + in.string() + " --out " +
                             (dir / "out.json").string() + " --mode controlled");
    CHECK(r2.exit_code == 3);
}

TEST_CASE("classicalise: annular mode") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "ann.json";
    const Cheese c{Disk{{0, 0}, 4}, Disk{{0, 0}, 1}, {{{1.2, 0}, 0.3}}, 0.0};
    write_file(in.string(), serialize_cheese(c));
    const fs::path out = dir / "ann.classical.json";
    CHECK(run("classicalise " + in.string() + " --out " + out.string() +
              " --mode annular").exit_code == 0);
    const Cheese result = load_cheese(out.string());
    CHECK(result.hole->radius == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(is_classical(result));
}

TEST_CASE("generate: determinism, byte for byte") {
    const fs::path dir = scratch_dir();
    const std::string a = (dir / "g1.json").string();
    const std::string b = (dir / "g2.json").string();

    CHECK(run("generate random --seed 7 --disks 50 --out " + a).exit_code == 0);
    CHECK(run("generate random --seed 7 --disks 50 --out " + b).exit_code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(delta(load_cheese(a), 1.0) > 0.0);

    const std::string o1 = (dir / "of1.json").string();
    const std::string o2 = (dir / "of2.json").string();
    CHECK(run("generate ofarrell --epsilon 0.015625 --levels 4 --seed 3 --out " + o1)
              .exit_code == 0);
    CHECK(run("generate ofarrell --epsilon 0.015625 --levels 4 --seed 3 --out " + o2)
              .exit_code == 0);
    CHECK(read_file(o1) == read_file(o2));
    CHECK(read_file(o1 + ".regions.json") == read_file(o2 + ".regions.json"));
    CHECK(read_file(o1 + ".layout.json") == read_file(o2 + ".layout.json"));

    // The controlled pipeline consumes its own generated documents.
    CHECK(run("classicalise " + o1 + " --out " + (dir / "ofc.json").string() +
              " --mode controlled --regions " + o1 + ".regions.json")
              .exit_code == 0);

    // Epsilon cap enforced.
    CHECK(run("generate ofarrell --epsilon 0.5 --out " + (dir / "bad.json").string())
              .exit_code == 3);
}

TEST_CASE("render: deterministic svg with optional overlays") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "r.json";
    write_file(in.string(),
               serialize_cheese(Cheese{Disk{{0, 0}, 1}, Disk{{0, 0}, 0.5},
                                       {{{0.75, 0}, 0.05}}, 0.0}));
    const std::string s1 = (dir / "r1.svg").string();
    const std::string s2 = (dir / "r2.svg").string();
    CHECK(run("render " + in.string() + " --out " + s1).exit_code == 0);
    CHECK(run("render " + in.string() + " --out " + s2).exit_code == 0);
    CHECK(read_file(s1) == read_file(s2));
    CHECK(read_file(s1).find("evenodd") != std::string::npos);

    ControllingCollection cc;
    cc.pairs.push_back({region_annulus({{0, 0}, 0.7, 0.8}), 0.01});
    const fs::path regions = dir / "r.regions.json";
    write_file(regions.string(), serialize_regions(cc));
    const std::string s3 = (dir / "r3.svg").string();
    CHECK(run("render " + in.string() + " --out " + s3 + " --overlay-regions --regions " +
              regions.string()).exit_code == 0);
    CHECK(read_file(s3).find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("area: identity self-test on a classical fixture") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "area.json";
    write_file(in.string(),
               serialize_cheese(Cheese{Disk{{0, 0}, 1}, std::nullopt,
                                       {{{0, 0}, 0.5}}, 0.0}));
    const RunResult r = run("area " + in.string() + " --mc-points 200000 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"sigmas\"") != std::string::npos);

    // Identical invocations give identical reports.
    const RunResult r2 = run("area " + in.string() + " --mc-points 200000 --seed 5");
    CHECK(r2.output == r.output);
}

TEST_CASE("stats subcommand mirrors check output") {
    const fs::path dir = scratch_dir();
    const fs::path in = dir / "s.json";
    write_file(in.string(), serialize_cheese(random_cheese(2, 10, 0.2)));
    const RunResult r = run("stats --json " + in.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"delta1\"") != std::string::npos);
    CHECK(r.output.find("\"rho\"") != std::string::npos);
}
