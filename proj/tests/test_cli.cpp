#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reglab/report.hpp"
#include "reglab/suites.hpp"

using namespace reglab;
using nlohmann::json;

namespace {

int run(const std::string& args) {
    std::string cmd = "./regulator-lab " + args;
    int status = std::system(cmd.c_str());
    if (status < 0) return -1;
#ifdef WEXITSTATUS
    return WEXITSTATUS(status);
#else
    return status;
#endif
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config validation and exit codes") {
    CHECK(run("verify ce --N 7 --out /tmp/reglab_bad.json") == 3);
    CHECK(run("verify ce --p 4 --out /tmp/reglab_bad.json") == 3);
    CHECK(run("verify nosuchsuite --out /tmp/reglab_bad.json") == 3);
    CHECK(run("verify ce --N 1 --out /tmp/reglab_ok.json") == 0);
}

TEST_CASE("verify ce --N 2 reports the Betti table") {
    REQUIRE(run("verify ce --N 2 --out /tmp/reglab_ce2.json") == 0);
    json j = json::parse(slurp("/tmp/reglab_ce2.json"));
    CHECK(j["schema_version"] == 1);
    REQUIRE(j["suites"].size() == 1);
    CHECK(j["suites"][0]["status"] == "pass");
    CHECK(j["suites"][0]["witnesses"]["betti"] == json::array({1, 1, 0, 1, 1}));
}

TEST_CASE("deterministic reports with fixed seed (timings excluded)") {
    REQUIRE(run("verify lazard --D 8 --seed 99 --no-timings --out /tmp/reglab_a.json") == 0);
    REQUIRE(run("verify lazard --D 8 --seed 99 --no-timings --out /tmp/reglab_b.json") == 0);
    CHECK(slurp("/tmp/reglab_a.json") == slurp("/tmp/reglab_b.json"));
}

TEST_CASE("report subcommand: empty run and re-emission") {
    REQUIRE(run("report --out /tmp/reglab_empty.json") == 0);
    json j = json::parse(slurp("/tmp/reglab_empty.json"));
    CHECK(j["suites"].empty());
    CHECK(j["schema_version"] == 1);

    REQUIRE(run("verify ce --N 1 --out /tmp/reglab_in.json") == 0);
    REQUIRE(run("report --in /tmp/reglab_in.json --format tsv --out /tmp/reglab_out.tsv") == 0);
    std::string tsv = slurp("/tmp/reglab_out.tsv");
    int lines = 0;
    for (char c : tsv)
        if (c == '\n') ++lines;
    json in = json::parse(slurp("/tmp/reglab_in.json"));
    CHECK(lines == static_cast<int>(in["suites"].size()) + 1);
}

TEST_CASE("shadow subcommand") {
    REQUIRE(run("shadow --N 2 --out /tmp/reglab_shadow.json") == 0);
    json j = json::parse(slurp("/tmp/reglab_shadow.json"));
    CHECK(j["suites"][0]["suite"] == "shadow");
    CHECK(j["suites"][0]["status"] == "pass");
    CHECK(j["suites"][0]["witnesses"]["linear_part_is_trace"] == true);
}

TEST_CASE("verify all on gl_1 is fast and green") {
    auto t0 = std::chrono::steady_clock::now();
    REQUIRE(run("verify all --N 1 --D 6 --max-level 3 --out /tmp/reglab_all1.json") == 0);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 5.0);
    json j = json::parse(slurp("/tmp/reglab_all1.json"));
    for (const auto& s : j["suites"]) CHECK(s["status"] != "fail");
}

TEST_CASE("report schema fields are stable") {
    Report rep;
    rep.config = {{"N", 1}};
    SuiteResult r;
    r.name = "demo";
    r.status = "recorded";
    r.witnesses = {{"scalar", "-1"}};
    r.elapsed_ms = 1.5;
    rep.suites.push_back(r);
    json j = rep.to_json(true);
    CHECK(j.contains("schema_version"));
    CHECK(j.contains("config"));
    CHECK(j["suites"][0].contains("suite"));
    CHECK(j["suites"][0].contains("status"));
    CHECK(j["suites"][0].contains("witnesses"));
    CHECK(j["suites"][0].contains("elapsed_ms"));
    json j2 = rep.to_json(false);
    CHECK(!j2["suites"][0].contains("elapsed_ms"));
    // tsv line count = suites + header
    std::string tsv = rep.to_tsv();
    int lines = 0;
    for (char c : tsv)
        if (c == '\n') ++lines;
    CHECK(lines == 2);
}
