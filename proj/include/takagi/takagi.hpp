#pragma once

#include "takagi/digits.hpp"
#include "takagi/rational.hpp"

namespace takagi {

/// Affine part of the partial sum S_n on a word's dyadic interval:
/// S_n(x) = base + slope * (x - left endpoint), with slope = D_n of the word.
/// On that interval, T(x) = base + slope*(x - left) + 2^-n * T(frac(2^n x)).
struct AffinePart {
    Rational base;   // S_n at the interval's left endpoint; equals T(left)
    long slope{0};   // walk value D_n; |slope| <= n, slope == n (mod 2)
    unsigned scale{0};
};

/// Certified range enclosure: `interval` contains the exact image of the
/// function over the queried set.
struct Enclosure {
    RatInterval interval;
    Rational width_bound;

    explicit Enclosure(RatInterval iv) : interval(std::move(iv)), width_bound(interval.width()) {}
    Enclosure(RatInterval iv, Rational wb) : interval(std::move(iv)), width_bound(std::move(wb)) {}
};

/// Exact value at a dyadic rational in [0,1]; the series terminates there.
Rational takagi_dyadic(const Dyadic& d);
Rational takagi_dyadic(const Rational& x);  // convenience; x must be dyadic

/// Exact value at any rational in [0,1], by splitting off the preperiod with
/// the affine partial sum and solving the one-dimensional fixed point over
/// the period. Scales to periods of hundreds of thousands of digits.
Rational takagi_rational(const Rational& x);

/// Partial sum of `terms` series terms plus the rigorous tail bound
/// [0, 2^-terms]. Kept permanently as the independent cross-check for the
/// exact evaluators.
Enclosure takagi_series(const Rational& x, unsigned terms);

/// base/slope/scale of S_n on the word's interval (see AffinePart).
AffinePart affine_part(const BinaryWord& w);

/// Sound enclosure of T over the word's dyadic interval:
/// [base + 2^-n min(0,s), base + 2^-n (max(0,s) + 2/3)].
Enclosure range_enclosure(const BinaryWord& w);

/// x = x0 + 4^-m t for a balanced word of order m; satisfies
/// T(x) = T(x0) + 4^-m T(t) exactly. Throws StructureError when the word is
/// not balanced.
Rational lift_into_hump(const BinaryWord& balanced_word, const Rational& t);

/// The full range of the function over [0,1].
const RatInterval& takagi_range();

namespace detail {
/// Digit-walk accumulation result: S_n at the interval's left endpoint is
/// numerator / 2^n, slope is the walk value D_n.
struct PartialSum {
    mpz_class numerator;
    long slope{0};
};
PartialSum partial_sum_word(const BinaryWord& w);
}  // namespace detail

}  // namespace takagi
