#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using json = nlohmann::ordered_json;

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the engine with stderr dropped; stdout and the exit code come back.
RunResult run(const std::string& args) {
    std::string cmd = std::string(CHOW_ENGINE_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expect_code = 0) {
    RunResult r = run(args + " --json --no-timing");
    CAPTURE(args);
    CAPTURE(r.out);
    REQUIRE(r.code == expect_code);
    return json::parse(r.out);
}

std::string data_path(const char* name) { return std::string(CHOW_DATA_DIR) + "/" + name; }

std::string write_temp(const char* name, const std::string& body) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("flats listing") {
    json j = run_json("--boolean 3 flats");
    CHECK(j["ground_set"] == 3);
    CHECK(j["flats"].size() == 8);
    CHECK(j["rank"] == 3);
    CHECK(j["top_degree"] == 2);
    CHECK(j["boolean"] == true);
    CHECK(j["simple"] == true);
    CHECK(j["loops"].empty());
    CHECK(j["coloops"] == json::array({0, 1, 2}));

    json u = run_json("--uniform 2 4 flats");
    CHECK(u["flats"].size() == 6);
    CHECK(u["ranks"] == json::array({0, 1, 1, 1, 1, 2}));

    RunResult table = run("--boolean 3 flats --no-timing");
    CHECK(table.code == 0);
    CHECK(table.out.find("flats: 8") != std::string::npos);
    CHECK(table.out.find("rank: 3") != std::string::npos);
}

TEST_CASE("labeled sources echo their labels") {
    json j = run_json("--flats " + data_path("labeled_triangle_flats.json") + " flats");
    CHECK(j["ground_set"] == json::array({"ab", "bc", "ca"}));
}

TEST_CASE("characteristic polynomial command") {
    json j = run_json("--graph " + data_path("k4.json") + " charpoly");
    CHECK(j["chi"]["coeffs"] == json::array({"-6", "11", "-6", "1"}));
    CHECK(j["chi_reduced"]["coeffs"] == json::array({"6", "-5", "1"}));
    CHECK(j["mu"] == json::array({"1", "5", "6"}));
    CHECK(j["methods_agree"] == true);
    CHECK(j["methods"].size() == 3);

    json f = run_json("--matrix " + data_path("fano.json") + " charpoly");
    CHECK(f["chi"]["coeffs"] == json::array({"-8", "14", "-7", "1"}));
}

TEST_CASE("degree command") {
    json j = run_json(
        "--boolean 7 degree 'D{0,1}^3' 'D{0,1,2,3,4}^2' 'D{0,1,2,3,4,5}' --trace");
    CHECK(j["deg"] == "-4");
    CHECK(j["expansion_total"] == "-4");
    CHECK(j["monomial"] == "D{0,1}^3 * D{0,1,2,3,4}^2 * D{0,1,2,3,4,5}");
    CHECK(j["expansion"].size() > 0);

    json o = run_json("--uniform 3 4 degree 'D{0}^2' --oracle");
    CHECK(o["deg"] == "-2");
    CHECK(o["oracle"] == "-2");

    json top = run_json("--boolean 4 degree 'D{E}^3'");
    CHECK(top["deg"] == "-1");

    // Off the top degree: value 0 plus a warning in the document.
    json off = run_json("--boolean 3 degree 'D{0}'");
    CHECK(off["deg"] == "0");
    REQUIRE(off["warnings"].size() == 1);
}

TEST_CASE("psi-degree command") {
    json j = run_json("--boolean 7 psi-degree 2 4");
    CHECK(j["value"] == "15");

    json pair = run_json("--uniform 3 4 psi-degree --minus '{0,1}' '{2,3}'");
    CHECK(pair["value"] == "1");

    // A rank-1 flat fails the subcollection rank test whatever its partner.
    json degenerate = run_json("--uniform 3 4 psi-degree --minus '{1}' 'E'");
    CHECK(degenerate["value"] == "0");

    RunResult both = run("--boolean 3 psi-degree 1 1 --minus 'E' 'E' --json");
    CHECK(both.code == 2);
    RunResult junk = run("--boolean 3 psi-degree one 1");
    CHECK(junk.code == 2);
}

TEST_CASE("volume command") {
    json sym = run_json("--boolean 3 volume --symbolic");
    CHECK(sym["terms"].size() == 12);
    CHECK(sym["boolean_case"] == true);
    CHECK(sym["denominator_factorial"] == 2);

    std::string yfile = write_temp("chow_cli_y.json", R"({"n": 3, "y": {"0,1,2": 1}})");
    json post = run_json("--boolean 3 volume --postnikov " + yfile);
    CHECK(post["value"] == "1/2");
    CHECK(post["agree"] == true);
    CHECK(post["support_vector"]["x"]["0"] == "1");

    std::string xfile =
        write_temp("chow_cli_x.json", R"({"n": 3, "x": {"0": 2, "0,1": 1, "0,2": 1}})");
    json ev = run_json("--boolean 3 volume --eval " + xfile);
    CHECK(ev["value"] == "1");
    CHECK(ev["normalization"] == "1/2!");

    RunResult nonbool = run("--uniform 2 3 volume --postnikov " + yfile);
    CHECK(nonbool.code == 2);
    RunResult wrong_n = run("--boolean 4 volume --eval " + xfile);
    CHECK(wrong_n.code == 2);
    RunResult no_mode = run("--boolean 3 volume");
    CHECK(no_mode.code == 2);

    std::remove(yfile.c_str());
    std::remove(xfile.c_str());
}

TEST_CASE("verify command") {
    json pd = run_json("--boolean 4 verify --pd");
    CHECK(pd["ok"] == true);
    REQUIRE(pd["pd"].size() == 4);
    for (const json& k : pd["pd"]) {
        CHECK(k["ok"] == true);
        CHECK(k["triangular"] == true);
    }

    json single = run_json("--boolean 4 verify --pd 2");
    REQUIRE(single["pd"].size() == 1);
    CHECK(single["pd"][0]["k"] == 2);

    json all = run_json("--uniform 3 4 verify --all --samples 50 --seed 5");
    CHECK(all["ok"] == true);
    CHECK(all["oracle_check"]["samples"] == 50);
    CHECK(all["oracle_check"]["agreements"] == 50);

    RunResult none = run("--boolean 3 verify");
    CHECK(none.code == 2);
    RunResult high_k = run("--boolean 3 verify --pd 9");
    CHECK(high_k.code == 2);
}

TEST_CASE("input errors exit with 2") {
    std::string junk = write_temp("chow_cli_junk.json", "not json at all");
    CHECK(run("--flats " + junk + " flats").code == 2);
    std::remove(junk.c_str());

    CHECK(run("--uniform 2 4 degree 'D{0,1}'").code == 2);       // not a flat
    CHECK(run("--boolean 3 degree 'D{9}'").code == 2);           // out of range
    CHECK(run("flats").code == 2);                               // no source
    CHECK(run("--boolean 3 --uniform 2 4 flats").code == 2);     // two sources
    CHECK(run("--boolean 3 flats --json --table").code == 2);    // conflicting formats
    CHECK(run("--boolean 3").code == 2);                         // no subcommand
    CHECK(run("--boolean 3 degree").code == 2);                  // missing monomial
    CHECK(run("--boolean 3 nonsense").code == 2);                // unknown subcommand
    CHECK(run("--boolean 0 flats").code == 2);                   // invalid size
}

TEST_CASE("guard refusals exit with 3") {
    CHECK(run("--boolean 7 degree 'D{E}^6' --oracle").code == 3);
    CHECK(run("--boolean 17 flats").code == 3);
    CHECK(run("--boolean 7 volume --symbolic").code == 3);
}

TEST_CASE("help exits cleanly") {
    CHECK(run("--help").code == 0);
    CHECK(run("degree --help").code == 0);
}

TEST_CASE("json output is byte-stable") {
    const std::string cmd =
        "--graph " + data_path("k4.json") + " verify --all --samples 25 --seed 9";
    RunResult a = run(cmd + " --json --no-timing");
    RunResult b = run(cmd + " --json --no-timing");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}
