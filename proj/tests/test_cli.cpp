#include "orbitforge/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only; stderr discarded
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(ORBITFORGE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.output.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("table subcommand emits the exact CSV") {
    const RunResult r = run_cli("table --n-max 1 --m-max 1 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "m,phi1,psi\n1,1,2\n");

    const RunResult r2 = run_cli("table --n-max 2 --m-max 2 --format csv");
    CHECK(r2.output == "m,phi1,phi2,psi\n1,1,1,2\n2,1,1,1\n");
}

TEST_CASE("table output is deterministic and parses back") {
    const RunResult a = run_cli("table --n-max 5 --m-max 31 --format csv");
    const RunResult b = run_cli("table --n-max 5 --m-max 31 --format csv");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const orbitforge::OrbitTable t = orbitforge::table_from_csv(a.output);
    CHECK(t.rows.size() == 31);
    CHECK(orbitforge::table_to_csv(t) == a.output);

    const RunResult j = run_cli("table --n-max 2 --m-max 4 --format json");
    const auto parsed = orbitforge::json::parse(j.output);
    CHECK(parsed["rows"][3]["psi"] == 3);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("table --m-max 0").exit_code == 2);
    CHECK(run_cli("table --format yaml").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
    CHECK(run_cli("bound --s 3").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("bound subcommand value and exit codes") {
    const RunResult ok = run_cli("bound --s 3 --t 7");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output == "4 formula\n");
    CHECK(run_cli("bound --s 6 --t 10").output == "2 formula\n");
    CHECK(run_cli("bound --s 12 --t 2").output == "1 formula-inapplicable\n");
    CHECK(run_cli("bound --s 8 --t 4").exit_code == 1);
    CHECK(run_cli("bound --s 3 --t 3").exit_code == 1);
}

TEST_CASE("order subcommand") {
    CHECK(run_cli("order --s 9 --t 6").output == "true\n");
    CHECK(run_cli("order --s 6 --t 9").output == "false\n");
    CHECK(run_cli("order --s 9 --t 6").exit_code == 0);
}

TEST_CASE("lucas and count subcommands") {
    const RunResult r = run_cli("lucas --k-max 7 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "1,1\n2,3\n3,4\n4,7\n5,11\n6,18\n7,29\n");

    const RunResult c = run_cli("count --n 2 --m-max 5 --format csv");
    CHECK(c.output == "1,1\n2,1\n3,0\n4,1\n5,1\n");
}

TEST_CASE("lambda subcommand reports value with exact bracket") {
    const RunResult r = run_cli("lambda --n 1 --tol 1e-10");
    CHECK(r.exit_code == 0);
    const auto j = orbitforge::json::parse(r.output);
    CHECK(std::abs(j["lambda"].get<double>() - 1.6180339887498949) < 1e-9);
    const auto lo = orbitforge::rational_from_string(j["bracket"][0].get<std::string>());
    const auto hi = orbitforge::rational_from_string(j["bracket"][1].get<std::string>());
    CHECK(lo < hi);
    CHECK(hi - lo <= orbitforge::Rational(2e-10));
}

TEST_CASE("verify subcommand gates on suite success") {
    const RunResult m = run_cli("verify --suite mobius --m-max 200");
    CHECK(m.exit_code == 0);
    const auto jm = orbitforge::json::parse(m.output);
    CHECK(jm["pass"] == true);

    CHECK(run_cli("verify --suite properties --n 2 --k-max 40").exit_code == 0);
    CHECK(run_cli("verify --suite oracle --map fn --n 2 --k-max 10").exit_code == 0);
    CHECK(run_cli("verify --suite symbolic --map fn --n 3 --k-max 30").exit_code == 0);
    CHECK(run_cli("verify --suite thm1c --m-max 40").exit_code == 0);
}

TEST_CASE("oracle subcommand with map selection") {
    const RunResult r = run_cli("oracle --map thm1 --k-max 5 --orbits --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "1,1,1\n2,3,1\n3,4,1\n4,7,1\n5,11,2\n");

    const RunResult fn = run_cli("oracle --map fn --n 2 --k-max 4 --format csv");
    CHECK(fn.output == "1,1\n2,3\n3,1\n4,7\n");
}

TEST_CASE("oracle accepts a map from a JSON node list") {
    const std::string path = "/tmp/orbitforge_test_map.json";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        const std::string body = R"({"nodes": [[1,1,3,1],[2,1,1,1],[3,1,2,1]]})";
        fwrite(body.data(), 1, body.size(), f);
        std::fclose(f);
    }
    const RunResult r = run_cli("oracle --map-json " + path + " --k-max 4 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "1,1\n2,3\n3,4\n4,7\n");
    std::remove(path.c_str());

    CHECK(run_cli("oracle --map-json /nonexistent/map.json --k-max 2").exit_code == 2);
}

TEST_CASE("piece cap environment override aborts deep iteration") {
    const std::string cmd = "ORBITFORGE_PIECE_CAP=10 " + std::string(ORBITFORGE_CLI_PATH) +
                            " oracle --map thm1 --k-max 12 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    while (fread(buf.data(), 1, buf.size(), pipe) > 0) {
    }
    const int status = pclose(pipe);
    CHECK(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 1);
}

TEST_CASE("scan subcommand reports clean findings") {
    const RunResult r = run_cli("scan --n-max 2 --m-max 30");
    CHECK(r.exit_code == 0);
    const auto j = orbitforge::json::parse(r.output);
    bool any_verified = false;
    for (const auto& c : j["checks"]) {
        CHECK(c["holds"] == true);
        CHECK(c["counterexamples"] == 0);
        if (c["verified_range"] == true) any_verified = true;
    }
    CHECK(any_verified);
}
