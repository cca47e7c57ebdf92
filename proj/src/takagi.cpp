#include "takagi/takagi.hpp"

#include <algorithm>
#include <vector>

namespace takagi {

namespace {

// phi(x) = distance from x to the nearest integer.
Rational phi(const Rational& x) {
    Rational f = x - Rational(x.floor());
    Rational half(1, 2);
    return f <= half ? f : Rational(1) - f;
}

// Block-Horner accumulation of B = sum_j c_j 2^(n-1-j) with small signed
// coefficients c_j = e_{j+1} * (s_j + 1). Digits come from `next()`; numbers
// of hundreds of thousands of digits stay near-linear via a balanced merge
// tree instead of one shift per digit.
template <typename Next>
detail::PartialSum accumulate_digits(std::size_t n, Next&& next) {
    detail::PartialSum out;
    long s = 0;

    struct Chunk {
        mpz_class value;
        std::size_t bits;
    };
    std::vector<Chunk> chunks;

    constexpr std::size_t kChunkDigits = 60;
    std::size_t j = 0;
    while (j < n) {
        // combine up to 60 digits in a signed 128-bit Horner window;
        // |c| <= n+1 keeps the window well inside range for n < 2^60
        __int128 win = 0;
        std::size_t took = 0;
        while (took < kChunkDigits && j < n) {
            uint8_t e = next(j);
            long c = e ? (s + 1) : 0;
            s += e ? -1 : +1;
            win = (win << 1) + c;
            ++took;
            ++j;
        }
        Chunk ch;
        ch.bits = took;
        bool neg = win < 0;
        unsigned __int128 mag = static_cast<unsigned __int128>(neg ? -win : win);
        unsigned long long words[2] = {static_cast<unsigned long long>(mag >> 64),
                                       static_cast<unsigned long long>(mag)};
        mpz_import(ch.value.get_mpz_t(), 2, 1, sizeof(words[0]), 0, 0, words);
        if (neg) ch.value = -ch.value;
        chunks.push_back(std::move(ch));
    }

    if (chunks.empty()) {
        out.numerator = 0;
        out.slope = 0;
        return out;
    }
    // balanced pairwise merge: left * 2^(right bits) + right
    while (chunks.size() > 1) {
        std::vector<Chunk> merged;
        merged.reserve(chunks.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < chunks.size(); i += 2) {
            Chunk c;
            c.bits = chunks[i].bits + chunks[i + 1].bits;
            mpz_mul_2exp(c.value.get_mpz_t(), chunks[i].value.get_mpz_t(),
                         static_cast<mp_bitcnt_t>(chunks[i + 1].bits));
            c.value += chunks[i + 1].value;
            merged.push_back(std::move(c));
        }
        if (chunks.size() % 2) merged.push_back(std::move(chunks.back()));
        chunks = std::move(merged);
    }
    out.numerator = std::move(chunks.front().value);
    out.slope = s;
    return out;
}

}  // namespace

namespace detail {

PartialSum partial_sum_word(const BinaryWord& w) {
    return accumulate_digits(w.size(), [&](std::size_t j) { return w[j]; });
}

}  // namespace detail

const RatInterval& takagi_range() {
    static const RatInterval r(Rational(0), Rational(2, 3));
    return r;
}

Rational takagi_dyadic(const Dyadic& d) {
    Rational x = dyadic_to_rational(d);
    return takagi_dyadic(x);
}

Rational takagi_dyadic(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("takagi_dyadic requires x in [0,1]");
    if (!x.is_dyadic()) throw DomainError("takagi_dyadic requires a dyadic rational");
    if (x == Rational(1)) return Rational(0);
    // terminating expansion: T(x) = S_n(x) with n the digit count
    mpz_class den = x.den();
    unsigned n = static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    BinaryWord w = digits_of(x, n);
    auto ps = detail::partial_sum_word(w);
    return Rational(ps.numerator, pow2(n));
}

Rational takagi_rational(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("takagi_rational requires x in [0,1]");
    if (x == Rational(1)) return Rational(0);
    PeriodicReal px = PeriodicReal::from_rational(x);
    const std::size_t a = px.preperiod.size(), p = px.period.size();
    if (p == 0) return takagi_dyadic(x);

    // With u = frac(2^a x) = c/q (purely periodic, q odd), B/s the digit-walk
    // accumulators of the preperiod and of one period read from slope 0:
    //   T(u) = (B_p q + s_p c) / (q (2^p - 1))
    //   T(x) = (B_a q (2^p-1) + s_a c (2^p-1) + B_p q + s_p c) / (2^a q (2^p-1)).
    // Assembled as one fraction so only a single gcd runs on the big values.
    auto pre = detail::partial_sum_word(px.preperiod);
    auto per = detail::partial_sum_word(px.period);

    mpz_class m2p = pow2(static_cast<unsigned>(p)) - 1;
    // den = 2^a q with q odd; u = frac(2^a x) = (num mod q) / q
    mpz_class q = x.den() >> mpz_scan1(x.den().get_mpz_t(), 0);
    mpz_class c = x.num() % q;

    mpz_class num = pre.numerator * q * m2p + pre.slope * c * m2p + per.numerator * q + per.slope * c;
    mpz_class den = pow2(static_cast<unsigned>(a)) * q * m2p;
    return Rational(std::move(num), std::move(den));
}

Enclosure takagi_series(const Rational& x, unsigned terms) {
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("takagi_series requires x in [0,1]");
    if (terms == 0) throw DomainError("takagi_series requires at least one term");
    Rational s(0);
    Rational scaled = x;
    for (unsigned n = 0; n < terms; ++n) {
        s += phi(scaled) * pow2_inv(n);
        scaled *= Rational(2);
    }
    // every remaining term is at most 2^-(n+1), so the tail lies in [0, 2^-terms]
    return Enclosure(RatInterval(s, s + pow2_inv(terms)), pow2_inv(terms));
}

AffinePart affine_part(const BinaryWord& w) {
    auto ps = detail::partial_sum_word(w);
    AffinePart ap;
    ap.scale = static_cast<unsigned>(w.size());
    ap.base = Rational(ps.numerator, pow2(ap.scale));
    ap.slope = ps.slope;
    return ap;
}

Enclosure range_enclosure(const BinaryWord& w) {
    AffinePart ap = affine_part(w);
    Rational unit = pow2_inv(ap.scale);
    Rational lo = ap.base + Rational(std::min(ap.slope, 0L)) * unit;
    Rational hi = ap.base + (Rational(std::max(ap.slope, 0L)) + Rational(2, 3)) * unit;
    return Enclosure(RatInterval(lo, hi));
}

Rational lift_into_hump(const BinaryWord& balanced_word, const Rational& t) {
    WordClass c = classify_word(balanced_word);
    if (!c.balanced) throw StructureError("lift_into_hump requires a balanced word");
    if (t.sign() < 0 || t > Rational(1)) throw DomainError("lift_into_hump requires t in [0,1]");
    Rational x0 = dyadic_to_rational(balanced_word.left_endpoint());
    return x0 + pow2_inv(2 * c.order) * t;
}

}  // namespace takagi
