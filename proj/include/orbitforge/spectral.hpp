#pragma once

// Growth-rate layer: the integer polynomial x^(2n+1) - 2x^(2n-1) - 1 whose
// unique positive zero lambda_n is the exponential growth rate of the n-th
// family's orbit counts. The root is isolated by bisection with exact
// rational sign evaluations; only the reported value is floating point.

#include "orbitforge/orbits.hpp"
#include "orbitforge/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitforge {

struct IntPolynomial {
    std::vector<BigInt> coeffs;  // ascending degree; leading coefficient nonzero

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }

    Rational evaluate(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = acc * x + Rational(*it);
        }
        return acc;
    }
};

// x^(2n+1) - 2 x^(2n-1) - 1
inline IntPolynomial growth_polynomial(long n) {
    if (n < 1) throw std::invalid_argument("growth_polynomial: require n >= 1");
    IntPolynomial p;
    p.coeffs.assign(static_cast<std::size_t>(2 * n + 2), BigInt(0));
    p.coeffs[0] = -1;
    p.coeffs[static_cast<std::size_t>(2 * n - 1)] = -2;
    p.coeffs[static_cast<std::size_t>(2 * n + 1)] = 1;
    return p;
}

struct RootApprox {
    double value = 0.0;
    double radius = 0.0;
    Rational bracket_lo;  // polynomial negative here
    Rational bracket_hi;  // polynomial positive here
};

// The unique positive zero lambda_n, to within tol. For every n the
// polynomial is negative on (0, sqrt(2)] and positive at 2, so [7/5, 2]
// brackets the root; bisection keeps exact rational endpoints.
inline RootApprox dominant_root(long n, double tol = 1e-12) {
    if (n < 1) throw std::invalid_argument("dominant_root: require n >= 1");
    if (!(tol > 0)) throw std::invalid_argument("dominant_root: require tol > 0");
    const IntPolynomial p = growth_polynomial(n);
    Rational lo = make_rational(7, 5);
    Rational hi = make_rational(2);
    if (!(p.evaluate(lo) < 0) || !(p.evaluate(hi) > 0)) {
        throw std::logic_error("dominant_root: initial bracket lost its sign change");
    }
    const Rational two_tol = Rational(tol) * 2;
    int guard = 0;
    while (hi - lo > two_tol) {
        if (++guard > 200) break;
        Rational mid = (lo + hi) / 2;
        if (p.evaluate(mid) < 0) {
            lo = std::move(mid);
        } else {
            hi = std::move(mid);
        }
    }
    RootApprox out;
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.value = to_double((lo + hi) / 2);
    out.radius = to_double((hi - lo) / 2);
    return out;
}

// Deviation of the empirical growth exponent of the minimal-period point
// count from log lambda_n, at period m. `unbiased` uses log Phi / m (no
// log(m)/m drift); `per_orbit` uses log(Phi/m) / m, matching the limit as
// usually stated.
struct GrowthGap {
    double unbiased = 0.0;
    double per_orbit = 0.0;
};

// Empty when the orbit count at m is zero (logarithm undefined).
inline std::optional<GrowthGap> growth_gap(long n, long m, double tol = 1e-12) {
    if (m < 1) throw std::invalid_argument("growth_gap: require m >= 1");
    const BigInt orbits = orbit_count(n, m);
    if (orbits == 0) return std::nullopt;
    const BigInt points = orbits * m;
    const double log_lambda = std::log(dominant_root(n, tol).value);
    GrowthGap g;
    g.unbiased = log_bigint(points) / static_cast<double>(m) - log_lambda;
    g.per_orbit = log_bigint(orbits) / static_cast<double>(m) - log_lambda;
    return g;
}

struct GrowthCheckReport {
    bool strictly_increasing = true;
    long first_violation = 0;       // smallest m >= 6 with count(m+1)/(m+1) <= count(m)/m
    double corrected_ratio = 0.0;   // point-count ratio at the top of the range
    double golden_gap = 0.0;        // |corrected_ratio - (1+sqrt(5))/2|
    bool pass = false;
};

// Checks that the Lucas-based orbit counts are strictly increasing from
// period 6 up to m_max, and that the consecutive ratio, corrected by
// (m+1)/m, approaches the golden ratio.
inline GrowthCheckReport check_orbit_growth(long m_max) {
    if (m_max < 8) throw std::invalid_argument("check_orbit_growth: require m_max >= 8");
    GrowthCheckReport r;
    std::vector<BigInt> counts;  // orbit counts at m = 1..m_max
    for (long m = 1; m <= m_max; ++m) counts.push_back(orbit_count(1, m));
    for (long m = 6; m < m_max; ++m) {
        if (!(counts[static_cast<std::size_t>(m)] > counts[static_cast<std::size_t>(m - 1)])) {
            r.strictly_increasing = false;
            if (r.first_violation == 0) r.first_violation = m;
        }
    }
    // [count(m+1)] / [count(m)] with the 1/m bias removed equals the ratio of
    // minimal-period point counts, which converges to the golden ratio.
    const BigInt top = counts[static_cast<std::size_t>(m_max - 1)] * m_max;
    const BigInt below = counts[static_cast<std::size_t>(m_max - 2)] * (m_max - 1);
    r.corrected_ratio = std::exp(log_bigint(top) - log_bigint(below));
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    r.golden_gap = std::abs(r.corrected_ratio - golden);
    r.pass = r.strictly_increasing && (m_max < 31 || r.golden_gap < 1e-2);
    return r;
}

}  // namespace orbitforge
