#include "orbitforge/io.hpp"
#include "orbitforge/orbits.hpp"
#include "orbitforge/plmap.hpp"
#include "orbitforge/symbolic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace orbitforge;

TEST_CASE("map JSON round-trips exactly") {
    for (const PLMap& f : {make_period3_map(), make_odd_period_map(3)}) {
        const json j = plmap_to_json(f);
        CHECK(plmap_from_json(j) == f);
    }

    // Non-integer coordinates serialize as numerator/denominator pairs.
    const PLMap frac({{make_rational(0), make_rational(1, 3)},
                      {make_rational(1, 2), make_rational(1)},
                      {make_rational(1), make_rational(0)}});
    const json j = plmap_to_json(frac);
    CHECK(j["nodes"][1][0] == 1);
    CHECK(j["nodes"][1][1] == 2);
    CHECK(plmap_from_json(j) == frac);

    CHECK_THROWS_AS(plmap_from_json(json{{"nodes", json::array({json::array({1, 2, 3})})}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(plmap_from_json(json::object()), std::invalid_argument);
}

TEST_CASE("located counts serialize with 1-based cells") {
    const PLMap f2 = make_odd_period_map(2);
    const SubstitutionRules rules = derive_rules(f2);
    const LocatedCounts c = initial_located_counts(f2, rules);
    const json j = located_counts_to_json(c, rules, base_partition(f2));
    CHECK(j["step"] == 1);
    REQUIRE(j["counts"].size() == 4);
    // every entry is [interval, lo, hi, count] with count 1
    bool saw_fold = false;
    for (const auto& cell : j["counts"]) {
        REQUIRE(cell.size() == 4);
        CHECK(cell[3] == 1);
        if (cell[0] == 3) {
            CHECK(cell[1] == 2);
            CHECK(cell[2] == 4);
            saw_fold = true;
        }
    }
    CHECK(saw_fold);
}

TEST_CASE("table CSV: exact header, LF endings, byte-identical round trip") {
    const OrbitTable t = build_table(5, 31);
    const std::string csv = table_to_csv(t);
    CHECK(csv.substr(0, csv.find('\n')) == "m,phi1,phi2,phi3,phi4,phi5,psi");
    CHECK(csv.find("\r") == std::string::npos);
    CHECK(csv.back() == '\n');

    const OrbitTable parsed = table_from_csv(csv);
    CHECK(parsed.n_max == 5);
    CHECK(parsed.m_max == 31);
    CHECK(table_to_csv(parsed) == csv);

    const OrbitTable tiny = build_table(1, 1);
    CHECK(table_to_csv(tiny) == "m,phi1,psi\n1,1,2\n");

    CHECK_THROWS_AS(table_from_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(table_from_csv("x,phi1,psi\n"), std::invalid_argument);
    CHECK_THROWS_AS(table_from_csv("m,phi1\n"), std::invalid_argument);
    CHECK_THROWS_AS(table_from_csv("m,phi1,psi\n1,1\n"), std::invalid_argument);
}

TEST_CASE("table JSON mirror carries the same values") {
    const OrbitTable t = build_table(2, 6);
    const json j = table_to_json(t);
    CHECK(j["m_max"] == 6);
    CHECK(j["n_max"] == 2);
    REQUIRE(j["rows"].size() == 6);
    CHECK(j["rows"][5]["m"] == 6);
    CHECK(j["rows"][5]["phi"][0] == 2);
    CHECK(j["rows"][5]["phi"][1] == 2);
    CHECK(j["rows"][5]["psi"] == 9);
}

TEST_CASE("reports serialize with optional fields only when set") {
    PropertyCheck ok{"even-steps", "1 <= k <= 2n", true, ""};
    const json jok = property_check_to_json(ok);
    CHECK(jok["pass"] == true);
    CHECK_FALSE(jok.contains("counterexample"));

    PropertyCheck bad{"even-steps", "1 <= k <= 2n", false, "k=3"};
    const json jbad = property_check_to_json(bad);
    CHECK(jbad["pass"] == false);
    CHECK(jbad["counterexample"] == "k=3");

    ScanEntry e{"claim", "range", true, true, 0, "", "note text"};
    const json je = scan_entry_to_json(e);
    CHECK(je["verified_range"] == true);
    CHECK(je["note"] == "note text");
    CHECK_FALSE(je.contains("first_counterexample"));
}
