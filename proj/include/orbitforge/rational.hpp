#pragma once

// Exact arithmetic carriers used throughout the library.
//
// All coordinates, counts and polynomial evaluations are exact: rationals are
// GMP mpq (always canonical: lowest terms, positive denominator) and counts
// are GMP mpz. No floating point enters any counting path; doubles appear
// only in the spectral layer's *reported* values.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbitforge {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline double to_double(const Rational& r) { return r.get_d(); }

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    return r.get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Accepts "p" or "p/q"; canonicalizes.
inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) {
        throw std::invalid_argument("rational_from_string: cannot parse '" + s + "'");
    }
    if (r.get_den() == 0) throw std::invalid_argument("rational_from_string: zero denominator");
    r.canonicalize();
    return r;
}

// Natural log of a positive big integer, stable for values far beyond double range.
inline double log_bigint(const BigInt& z) {
    if (z <= 0) throw std::domain_error("log_bigint: nonpositive argument");
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

inline BigInt pow2(unsigned long k) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

}  // namespace orbitforge
