#pragma once

// Test-only oracles, independent of the library's evaluation paths: direct
// series summation with its own phi, long division, and brute-force word
// scans. Expected values in the tests were computed with these (and frozen),
// so the library is always checked against a second arithmetic route.

#include <cstdint>
#include <vector>

#include "takagi/rational.hpp"

namespace oracle {

using takagi::Rational;

inline Rational phi(const Rational& x) {
    Rational f = x - Rational(x.floor());
    return f <= Rational(1, 2) ? f : Rational(1) - f;
}

// Finite series sum at a dyadic rational: terms vanish once 2^j x is integral.
inline Rational takagi_finite(Rational x) {
    Rational s(0);
    Rational unit(1);
    while (!x.is_integer()) {
        s += phi(x) * unit;
        unit = unit / Rational(2);
        x = x * Rational(2);
    }
    return s;
}

// N-term partial sum and the [0, 2^-N] tail.
inline std::pair<Rational, Rational> takagi_series_bounds(const Rational& x, unsigned terms) {
    Rational s(0), scaled = x, unit(1);
    for (unsigned n = 0; n < terms; ++n) {
        s += phi(scaled) * unit;
        scaled = scaled * Rational(2);
        unit = unit / Rational(2);
    }
    return {s, s + unit};
}

// Digits of x in [0,1) by plain long division.
inline std::vector<int> digits(Rational x, std::size_t n) {
    std::vector<int> out;
    for (std::size_t i = 0; i < n; ++i) {
        x = x * Rational(2);
        if (x >= Rational(1)) {
            out.push_back(1);
            x -= Rational(1);
        } else {
            out.push_back(0);
        }
    }
    return out;
}

// Brute force over all 2^(2m) words: count those whose walk stays >= 0 and
// ends at 0.
inline std::size_t count_leading_brute(unsigned m) {
    if (m == 0) return 1;
    const unsigned n = 2 * m;
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        int d = 0;
        bool ok = true;
        for (unsigned j = 0; j < n && ok; ++j) {
            d += ((mask >> (n - 1 - j)) & 1) ? -1 : +1;
            if (d < 0) ok = false;
        }
        if (ok && d == 0) ++count;
    }
    return count;
}

// Brute force balanced-word collection (bits vectors), order exactly m.
inline std::vector<std::vector<uint8_t>> balanced_words_brute(unsigned m) {
    std::vector<std::vector<uint8_t>> out;
    const unsigned n = 2 * m;
    if (m == 0) {
        out.push_back({});
        return out;
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        int d = 0;
        std::vector<uint8_t> bits(n);
        for (unsigned j = 0; j < n; ++j) {
            bits[j] = (mask >> (n - 1 - j)) & 1;
            d += bits[j] ? -1 : +1;
        }
        if (d == 0) out.push_back(std::move(bits));
    }
    return out;
}

// Deterministic 64-bit generator for property tests.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    // random rational in [0, 1) with denominator <= max_den
    Rational rational(std::uint64_t max_den) {
        std::uint64_t q = 2 + below(max_den - 1);
        std::uint64_t p = below(q);
        return Rational(mpz_class(static_cast<unsigned long>(p)), mpz_class(static_cast<unsigned long>(q)));
    }
};

}  // namespace oracle
