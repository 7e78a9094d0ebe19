#include "orbitforge/sharkovskii.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

using namespace orbitforge;

TEST_CASE("decomposition into 2-adic part and odd part") {
    const PeriodDecomposition d6 = decompose(6);
    CHECK(d6.k == 1);
    CHECK(d6.odd_part == 3);
    REQUIRE(d6.n.has_value());
    CHECK(*d6.n == 1);

    const PeriodDecomposition d12 = decompose(12);
    CHECK(d12.k == 2);
    CHECK(d12.odd_part == 3);
    CHECK(*d12.n == 1);

    const PeriodDecomposition d8 = decompose(8);
    CHECK(d8.k == 3);
    CHECK(d8.odd_part == 1);
    CHECK_FALSE(d8.n.has_value());

    const PeriodDecomposition d1 = decompose(1);
    CHECK(d1.k == 0);
    CHECK(d1.odd_part == 1);

    const PeriodDecomposition d96 = decompose(96);
    CHECK(d96.k == 5);
    CHECK(d96.odd_part == 3);

    CHECK_THROWS_AS(decompose(0), std::invalid_argument);
}

TEST_CASE("order spot checks") {
    CHECK(precedes(3, 1024));
    CHECK(precedes(9, 6));
    CHECK(precedes(4, 2));
    CHECK(precedes(3, 5));
    CHECK(precedes(5, 7));
    CHECK(precedes(7, 2 * 3));
    CHECK(precedes(2 * 3, 2 * 5));
    CHECK(precedes(2 * 9, 4 * 3));
    CHECK(precedes(8, 4));
    CHECK(precedes(2, 1));
    CHECK_FALSE(precedes(5, 3));
    CHECK_FALSE(precedes(1, 2));
    CHECK_FALSE(precedes(7, 7));
    CHECK_THROWS_AS(precedes(0, 3), std::invalid_argument);
}

TEST_CASE("order is a strict total order") {
    // Exhaustive pairwise trichotomy up to 512.
    for (long a = 1; a <= 512; ++a) {
        for (long b = 1; b <= 512; ++b) {
            if (a == b) {
                REQUIRE_FALSE(precedes(a, b));
            } else {
                REQUIRE(precedes(a, b) != precedes(b, a));
            }
        }
    }
    // Exhaustive transitivity up to 64.
    for (long a = 1; a <= 64; ++a) {
        for (long b = 1; b <= 64; ++b) {
            if (!precedes(a, b)) continue;
            for (long c = 1; c <= 64; ++c) {
                if (precedes(b, c)) REQUIRE(precedes(a, c));
            }
        }
    }
}

TEST_CASE("order extremes and the power-of-two tail") {
    for (long t = 1; t <= 512; ++t) {
        if (t != 3) CHECK(precedes(3, t));
        if (t != 1) CHECK(precedes(t, 1));
    }
    // After a power of two come exactly the smaller powers of two.
    for (long j = 1; j <= 9; ++j) {
        const long s = 1L << j;
        std::vector<long> forced;
        for (long t = 1; t <= 512; ++t) {
            if (precedes(s, t)) forced.push_back(t);
        }
        std::vector<long> want;
        for (long i = j - 1; i >= 0; --i) want.push_back(1L << i);
        std::sort(want.begin(), want.end());
        std::sort(forced.begin(), forced.end());
        CHECK(forced == want);
    }
}

TEST_CASE("sharp orbit bound queries") {
    const SharpBound b37 = sharp_orbit_bound(3, 7);
    CHECK(b37.orbits == 4);
    CHECK(b37.status == BoundStatus::formula);

    CHECK(sharp_orbit_bound(6, 10).orbits == 2);
    CHECK(sharp_orbit_bound(12, 20).orbits == 2);
    CHECK(sharp_orbit_bound(3, 8).orbits == 5);
    CHECK(sharp_orbit_bound(5, 7).orbits == 2);

    // 2^k does not divide t: only the baseline single orbit is guaranteed.
    const SharpBound inapplicable = sharp_orbit_bound(12, 2);
    CHECK(inapplicable.orbits == 1);
    CHECK(inapplicable.status == BoundStatus::formula_inapplicable);

    CHECK_THROWS_AS(sharp_orbit_bound(8, 4), std::invalid_argument);   // power of two
    CHECK_THROWS_AS(sharp_orbit_bound(3, 3), std::invalid_argument);   // not forced
    CHECK_THROWS_AS(sharp_orbit_bound(10, 3), std::invalid_argument);  // wrong direction
}

TEST_CASE("whenever the bound applies it guarantees at least one orbit") {
    for (long s : {3L, 5L, 6L, 12L}) {
        for (long t = 1; t <= 64; ++t) {
            if (!precedes(s, t)) continue;
            const SharpBound b = sharp_orbit_bound(s, t);
            CHECK(b.orbits >= 1);
        }
    }
}
