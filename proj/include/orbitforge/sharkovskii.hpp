#pragma once

// The Sharkovskii ordering on positive integers
//   3 < 5 < 7 < ... < 2*3 < 2*5 < ... < 2^2*3 < 2^2*5 < ... < 2^3 < 2^2 < 2 < 1
// and the sharp lower-bound query: a map with an orbit of minimal period
// s = 2^k(2n+1) (and none earlier in the ordering) has at least
// orbit_count(n, t/2^k) distinct orbits of every forced period t.

#include "orbitforge/orbits.hpp"
#include "orbitforge/rational.hpp"

#include <optional>
#include <stdexcept>
#include <tuple>

namespace orbitforge {

struct PeriodDecomposition {
    int k = 0;               // 2-adic valuation
    long odd_part = 1;       // s / 2^k
    std::optional<long> n;   // (odd_part - 1) / 2, when odd_part > 1
};

inline PeriodDecomposition decompose(long s) {
    if (s < 1) throw std::invalid_argument("decompose: require s >= 1");
    PeriodDecomposition d;
    while (s % 2 == 0) {
        s /= 2;
        ++d.k;
    }
    d.odd_part = s;
    if (s > 1) d.n = (s - 1) / 2;
    return d;
}

// Strict total order: true iff a comes before b (a forces b), false for a == b.
// Non-powers of two sort by (2-adic valuation ascending, odd part ascending);
// powers of two follow, by exponent descending.
inline bool precedes(long a, long b) {
    if (a < 1 || b < 1) throw std::invalid_argument("precedes: require positive integers");
    if (a == b) return false;
    const PeriodDecomposition da = decompose(a);
    const PeriodDecomposition db = decompose(b);
    const bool pa = da.odd_part == 1;
    const bool pb = db.odd_part == 1;
    if (pa != pb) return pb;                    // every non-power of two comes first
    if (pa) return da.k > db.k;                 // power-of-two tail is descending
    return std::tie(da.k, da.odd_part) < std::tie(db.k, db.odd_part);
}

enum class BoundStatus {
    formula,               // the sharp count applies
    formula_inapplicable,  // 2^k does not divide t; only the baseline 1 is guaranteed
};

struct SharpBound {
    BigInt orbits;
    BoundStatus status = BoundStatus::formula;
};

// Minimal guaranteed number of distinct orbits of minimal period t, for a map
// whose earliest period in the ordering is s = 2^k(2n+1), n >= 1. Requires
// s not a power of two and s before t in the ordering. When 2^k does not
// divide t (only possible for t a power of two below 2^k) the formula does
// not apply and the guarantee falls back to the baseline single orbit.
inline SharpBound sharp_orbit_bound(long s, long t) {
    const PeriodDecomposition d = decompose(s);
    if (d.odd_part == 1) {
        throw std::invalid_argument("sharp_orbit_bound: s must not be a power of two");
    }
    if (t < 1 || !precedes(s, t)) {
        throw std::invalid_argument("sharp_orbit_bound: t is not forced by s");
    }
    const long twok = 1L << d.k;
    if (t % twok != 0) {
        return {BigInt(1), BoundStatus::formula_inapplicable};
    }
    return {orbit_count(*d.n, t / twok), BoundStatus::formula};
}

}  // namespace orbitforge
