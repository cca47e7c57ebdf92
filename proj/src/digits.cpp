#include "takagi/digits.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace takagi {

namespace {

constexpr std::size_t kDefaultPeriodCap = 10'000'000;

// Multiplicative order of 2 modulo odd q (q >= 1); 0 for q == 1.
std::size_t order_of_two(const mpz_class& q_odd, std::size_t cap) {
    if (q_odd == 1) return 0;
    if (mpz_fits_ulong_p(q_odd.get_mpz_t()) && q_odd.get_ui() < (1UL << 31)) {
        unsigned long q = q_odd.get_ui();
        unsigned long r = 1;
        std::size_t p = 0;
        do {
            r = (2 * r) % q;
            ++p;
            if (p > cap) throw ResourceError("binary period exceeds cap " + std::to_string(cap));
        } while (r != 1);
        return p;
    }
    mpz_class r = 1;
    std::size_t p = 0;
    do {
        r <<= 1;
        if (r >= q_odd) r -= q_odd;
        ++p;
        if (p > cap) throw ResourceError("binary period exceeds cap " + std::to_string(cap));
    } while (r != 1);
    return p;
}

// frac(2^j * x) for x = c/q in [0,1), exact.
Rational frac_shift(const Rational& x, std::size_t j) {
    mpz_class m, e(static_cast<unsigned long>(j));
    mpz_class two = 2;
    mpz_powm(m.get_mpz_t(), two.get_mpz_t(), e.get_mpz_t(), x.den().get_mpz_t());
    mpz_class num = (x.num() * m) % x.den();
    return Rational(num, x.den());
}

}  // namespace

// ── BinaryWord ──────────────────────────────────────────────────────────────

std::string BinaryWord::str() const {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s += static_cast<char>('0' + b);
    return s;
}

BinaryWord BinaryWord::parse(std::string_view text) {
    BinaryWord w;
    w.bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw DomainError("binary word may contain only 0/1");
        w.bits.push_back(static_cast<uint8_t>(c - '0'));
    }
    return w;
}

mpz_class BinaryWord::numeral() const {
    mpz_class v = 0;
    for (uint8_t b : bits) {
        v <<= 1;
        if (b) v += 1;
    }
    return v;
}

Dyadic BinaryWord::left_endpoint() const {
    return Dyadic(numeral(), static_cast<unsigned>(bits.size()));
}

BinaryWord BinaryWord::concat(const BinaryWord& tail) const {
    BinaryWord out = *this;
    out.bits.insert(out.bits.end(), tail.bits.begin(), tail.bits.end());
    return out;
}

BinaryWord BinaryWord::complemented() const {
    BinaryWord out = *this;
    for (auto& b : out.bits) b ^= 1;
    return out;
}

// ── Walk ────────────────────────────────────────────────────────────────────

long Walk::min() const {
    if (values.empty()) return 0;
    long m = values.front();
    for (long v : values) m = std::min(m, v);
    return m;
}

Walk walk_of(const BinaryWord& w) {
    Walk out;
    out.values.reserve(w.size());
    long d = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        d += w[j] ? -1 : +1;
        out.values.push_back(d);
        if (d == 0) out.zero_positions.push_back(j + 1);
    }
    return out;
}

WordClass classify_word(const BinaryWord& w) {
    Walk wk = walk_of(w);
    WordClass c;
    c.balanced = (w.size() % 2 == 0) && wk.final() == 0;
    c.order = c.balanced ? static_cast<unsigned>(w.size() / 2) : 0;
    c.generation = static_cast<unsigned>(wk.zero_positions.size());
    c.leading = true;
    for (long v : wk.values)
        if (v < 0) { c.leading = false; break; }
    return c;
}

BinaryWord digits_of(const Rational& x, std::size_t n) {
    if (x.sign() < 0 || x >= Rational(1)) throw DomainError("digits_of requires x in [0,1)");
    BinaryWord w;
    w.bits.reserve(n);
    mpz_class r = x.num();
    const mpz_class& q = x.den();
    for (std::size_t j = 0; j < n; ++j) {
        r <<= 1;
        if (r >= q) {
            w.bits.push_back(1);
            r -= q;
        } else {
            w.bits.push_back(0);
        }
    }
    return w;
}

// ── PeriodicReal ────────────────────────────────────────────────────────────

PeriodicReal::PeriodicReal(BinaryWord pre, BinaryWord per) {
    // Canonicalize arbitrary (pre, per) through the value: long division gives
    // the minimal pair and rules out all-ones periods.
    Rational val(0);
    std::size_t a = pre.size(), p = per.size();
    val = Rational(pre.numeral(), pow2(static_cast<unsigned>(a)));
    if (p > 0) {
        Rational rep(per.numeral(), pow2(static_cast<unsigned>(p)) - 1);
        val += rep * pow2_inv(static_cast<unsigned>(a));
    }
    *this = from_rational(val);
}

PeriodicReal PeriodicReal::from_rational(const Rational& x) {
    if (x.sign() < 0 || x >= Rational(1)) throw DomainError("periodic real requires x in [0,1)");
    PeriodicReal out;
    const mpz_class& q = x.den();
    std::size_t a = (q == 1) ? 0 : mpz_scan1(q.get_mpz_t(), 0);
    mpz_class q_odd = q >> a;
    std::size_t p = order_of_two(q_odd, kDefaultPeriodCap);

    out.preperiod.bits.reserve(a);
    out.period.bits.reserve(p);
    if (mpz_fits_ulong_p(q.get_mpz_t()) && q.get_ui() < (1ULL << 62)) {
        unsigned long long qq = q.get_ui();
        unsigned long long r = mpz_get_ui(x.num().get_mpz_t());
        auto next_digit = [&]() -> uint8_t {
            r <<= 1;
            if (r >= qq) {
                r -= qq;
                return 1;
            }
            return 0;
        };
        for (std::size_t j = 0; j < a; ++j) out.preperiod.bits.push_back(next_digit());
        for (std::size_t j = 0; j < p; ++j) out.period.bits.push_back(next_digit());
    } else {
        mpz_class r = x.num();
        auto next_digit = [&]() -> uint8_t {
            r <<= 1;
            if (r >= q) {
                r -= q;
                return 1;
            }
            return 0;
        };
        for (std::size_t j = 0; j < a; ++j) out.preperiod.bits.push_back(next_digit());
        for (std::size_t j = 0; j < p; ++j) out.period.bits.push_back(next_digit());
    }
    if (p == 0) {
        // terminating expansion: strip the all-zero tail
        while (!out.preperiod.bits.empty() && out.preperiod.bits.back() == 0) out.preperiod.bits.pop_back();
    }
    return out;
}

Rational PeriodicReal::to_rational() const {
    std::size_t a = preperiod.size(), p = period.size();
    Rational val(preperiod.numeral(), pow2(static_cast<unsigned>(a)));
    if (p > 0) {
        Rational rep(period.numeral(), pow2(static_cast<unsigned>(p)) - 1);
        val += rep * pow2_inv(static_cast<unsigned>(a));
    }
    return val;
}

uint8_t PeriodicReal::digit(std::size_t j) const {
    std::size_t a = preperiod.size(), p = period.size();
    if (j == 0) throw DomainError("digits are 1-indexed");
    if (j <= a) return preperiod[j - 1];
    if (p == 0) return 0;
    return period[(j - a - 1) % p];
}

std::string PeriodicReal::str() const {
    if (preperiod.empty() && period.empty()) return "0";
    std::string s = "0." + preperiod.str();
    if (!period.empty()) s += "(" + period.str() + ")";
    return s;
}

PeriodicReal PeriodicReal::parse(std::string_view text) {
    if (text == "0") return PeriodicReal();
    if (text.size() < 2 || text[0] != '0' || text[1] != '.')
        throw DomainError("periodic real literal must look like 0.greedy(period)");
    std::string body(text.substr(2));
    std::string pre, per;
    auto open = body.find('(');
    if (open == std::string::npos) {
        pre = body;
    } else {
        if (body.back() != ')') throw DomainError("unterminated period in literal");
        pre = body.substr(0, open);
        per = body.substr(open + 1, body.size() - open - 2);
        if (per.empty()) throw DomainError("empty period group in literal");
    }
    return PeriodicReal(BinaryWord::parse(pre), BinaryWord::parse(per));
}

// ── Walk structure over periodic reals ──────────────────────────────────────

PeriodicWalk periodic_walk(const PeriodicReal& x) {
    PeriodicWalk out;
    const std::size_t a = x.preperiod.size(), p = x.period.size();
    long d = 0;
    long min_pre = std::numeric_limits<long>::max();  // min over 1 <= j <= a
    std::vector<std::size_t> pre_zeros;
    for (std::size_t j = 1; j <= a; ++j) {
        d += x.preperiod[j - 1] ? -1 : +1;
        min_pre = std::min(min_pre, d);
        if (d == 0) pre_zeros.push_back(j);
    }
    const long d_a = d;

    if (p == 0) {
        // dyadic: the walk climbs forever past the preperiod
        out.drift = 1;
        out.zeros = pre_zeros;
        if (d_a < 0) out.zeros.push_back(a + static_cast<std::size_t>(-d_a));
        out.infinite_zeros = false;
        out.last_zero = out.zeros.empty() ? 0 : out.zeros.back();
        out.min_value = std::min(min_pre, d_a + 1);
        return out;
    }

    std::vector<long> window(p);
    long min_win = std::numeric_limits<long>::max();
    for (std::size_t i = 1; i <= p; ++i) {
        d += x.period[i - 1] ? -1 : +1;
        window[i - 1] = d;
        min_win = std::min(min_win, d);
    }
    const long drift = d - d_a;
    out.drift = drift;

    out.zeros = pre_zeros;
    if (drift == 0) {
        bool win_zero = false;
        for (std::size_t i = 1; i <= p; ++i)
            if (window[i - 1] == 0) {
                out.zeros.push_back(a + i);
                win_zero = true;
            }
        out.infinite_zeros = win_zero;
        out.last_zero = (!win_zero && !out.zeros.empty()) ? out.zeros.back() : 0;
        out.min_value = std::min(min_pre, min_win);
        return out;
    }

    // drift != 0: each phase returns to zero at most once
    out.infinite_zeros = false;
    for (std::size_t i = 1; i <= p; ++i) {
        long v = window[i - 1];
        if (v % drift != 0) continue;
        long k = -v / drift;
        if (k >= 0) out.zeros.push_back(a + static_cast<std::size_t>(k) * p + i);
    }
    std::sort(out.zeros.begin(), out.zeros.end());
    out.last_zero = out.zeros.empty() ? 0 : out.zeros.back();
    if (drift > 0) {
        out.min_value = std::min(min_pre, min_win);
    } else {
        out.min_value = std::numeric_limits<long>::min();  // unbounded below
    }
    return out;
}

bool walk_at_least(const PeriodicReal& x, long bound) {
    PeriodicWalk w = periodic_walk(x);
    if (w.drift < 0) return false;
    return w.min_value >= bound;
}

PeriodicReal reflect_nonneg(const PeriodicReal& x) {
    const std::size_t a = x.preperiod.size(), p = x.period.size();
    PeriodicWalk w = periodic_walk(x);

    // Past position P0 the transform is a fixed copy/complement of the input,
    // so the output is periodic from there with the same period.
    std::size_t P0;
    if (w.infinite_zeros) {
        P0 = a;
    } else {
        P0 = std::max(w.last_zero, a);
        if (p > 0) P0 = a + ((P0 - a) + p - 1) / p * p;  // align to a phase boundary
        constexpr std::size_t kReflectCap = 1'000'000;
        if (P0 > kReflectCap) throw ResourceError("reflection preperiod exceeds cap 1000000");
    }

    BinaryWord pre_out, per_out;
    long d = 0;
    std::size_t j = 1;
    auto step = [&](uint8_t bit) -> uint8_t {
        uint8_t out = (d == 0) ? 0 : (d > 0 ? bit : static_cast<uint8_t>(1 - bit));
        d += bit ? -1 : +1;
        return out;
    };
    for (; j <= P0; ++j) pre_out.bits.push_back(step(x.digit(j)));
    for (std::size_t i = 0; i < p; ++i, ++j) per_out.bits.push_back(step(x.digit(j)));
    if (p == 0) per_out.bits.clear();

    return PeriodicReal(pre_out, per_out);  // re-canonicalizes
}

// ── Local level sets ────────────────────────────────────────────────────────

LocalLevelSet local_level_set(const PeriodicReal& x, std::size_t depth, std::size_t cap) {
    PeriodicWalk w = periodic_walk(x);
    const Rational val = x.to_rational();
    const bool dyadic = x.is_dyadic();

    // Flippable excursions: one per walk zero (the excursion ending there),
    // plus the infinite tail excursion for non-dyadic x with finitely many
    // zeros. Dyadic tail flips would produce an all-ones expansion, which is
    // the non-canonical spelling of a different real: excluded.
    std::vector<std::size_t> zeros;
    bool tail_flippable = false;
    LocalLevelSet out;
    if (w.infinite_zeros) {
        out.truncated = true;
        const std::size_t a = x.preperiod.size(), p = x.period.size();
        std::size_t j = 0;
        long d = 0;
        while (zeros.size() < depth) {
            ++j;
            d += x.digit(j) ? -1 : +1;
            if (d == 0) zeros.push_back(j);
            if (j > a + p * (depth + 2)) break;  // safety; zeros recur every period
        }
    } else {
        zeros = w.zeros;
        tail_flippable = !dyadic;
    }

    const std::size_t nflip = zeros.size() + (tail_flippable ? 1 : 0);
    if (nflip >= 63 || (std::size_t(1) << nflip) > cap)
        throw ResourceError("local level set would exceed cap " + std::to_string(cap));

    // per-excursion value shift for complementing digits (l, r]: a segment of
    // value s becomes (2^-l - 2^-r) - s; for the infinite tail r = infinity
    std::vector<Rational> deltas;
    deltas.reserve(nflip);
    std::vector<std::size_t> bounds;  // excursion boundaries: 0, zeros...
    bounds.push_back(0);
    for (std::size_t z : zeros) bounds.push_back(z);
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        std::size_t l = bounds[i], r = bounds[i + 1];
        Rational seg = frac_shift(val, l) * pow2_inv(static_cast<unsigned>(l)) -
                       frac_shift(val, r) * pow2_inv(static_cast<unsigned>(r));
        deltas.push_back((pow2_inv(static_cast<unsigned>(l)) - pow2_inv(static_cast<unsigned>(r))) -
                         Rational(2) * seg);
    }
    if (tail_flippable) {
        std::size_t l = bounds.back();
        deltas.push_back(pow2_inv(static_cast<unsigned>(l)) *
                         (Rational(1) - Rational(2) * frac_shift(val, l)));
    }

    // Gray-code walk over flip subsets: one rational update per member
    std::vector<Rational> values;
    values.reserve(std::size_t(1) << nflip);
    Rational v = val;
    values.push_back(v);
    std::size_t gray = 0;
    for (std::size_t i = 1; i < (std::size_t(1) << nflip); ++i) {
        std::size_t next_gray = i ^ (i >> 1);
        std::size_t bit = 0;
        std::size_t changed = gray ^ next_gray;
        while (!(changed & (std::size_t(1) << bit))) ++bit;
        if (next_gray & (std::size_t(1) << bit))
            v += deltas[bit];
        else
            v -= deltas[bit];
        gray = next_gray;
        values.push_back(v);
    }

    std::sort(values.begin(), values.end());
    out.members.reserve(values.size());
    for (const Rational& m : values) out.members.push_back(PeriodicReal::from_rational(m));
    return out;
}

// ── Enumeration ─────────────────────────────────────────────────────────────

namespace {

mpz_class central_binomial(unsigned m) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * m, m);
    return b;
}

mpz_class catalan(unsigned m) { return central_binomial(m) / (m + 1); }

void check_cap(const mpz_class& total, std::size_t cap, const char* what) {
    if (total > static_cast<unsigned long>(cap))
        throw ResourceError(std::string(what) + " enumeration needs " + total.get_str() +
                            " words, exceeding cap " + std::to_string(cap));
}

// Lexicographic DFS over all balanced words of order m; `leading` restricts
// the walk to stay nonnegative. Visit receives the bits of each word.
template <typename Visit>
void dfs_order(unsigned m, bool leading, Visit&& visit) {
    if (m == 0) {
        BinaryWord w;
        visit(w);
        return;
    }
    std::size_t n = 2 * m;
    std::vector<uint8_t> word(n, 0);
    // recursive lambda
    auto rec = [&](auto&& self, std::size_t j, long d) -> void {
        if (j == n) {
            BinaryWord w;
            w.bits = word;
            visit(w);
            return;
        }
        std::size_t left = n - j - 1;
        // bit 0: d+1, bit 1: d-1; must be able to return to 0
        long d0 = d + 1;
        if (std::abs(d0) <= static_cast<long>(left)) {
            word[j] = 0;
            self(self, j + 1, d0);
        }
        long d1 = d - 1;
        if ((!leading || d1 >= 0) && std::abs(d1) <= static_cast<long>(left)) {
            word[j] = 1;
            self(self, j + 1, d1);
            word[j] = 0;
        }
    };
    rec(rec, 0, 0);
}

}  // namespace

std::vector<BinaryWord> enumerate_balanced(unsigned max_order, std::optional<unsigned> generation,
                                           std::size_t cap) {
    mpz_class total = 0;
    for (unsigned m = 0; m <= max_order; ++m) total += central_binomial(m);
    check_cap(total, cap, "balanced");

    std::vector<BinaryWord> out;
    for (unsigned m = 0; m <= max_order; ++m) {
        dfs_order(m, /*leading=*/false, [&](const BinaryWord& w) {
            if (generation) {
                unsigned g = static_cast<unsigned>(walk_of(w).zero_positions.size());
                if (g != *generation) return;
            }
            out.push_back(w);
        });
    }
    return out;
}

std::vector<BinaryWord> enumerate_leading(unsigned max_order, std::size_t cap) {
    mpz_class total = 0;
    for (unsigned m = 0; m <= max_order; ++m) total += catalan(m);
    check_cap(total, cap, "leading");

    std::vector<BinaryWord> out;
    for (unsigned m = 0; m <= max_order; ++m)
        dfs_order(m, /*leading=*/true, [&](const BinaryWord& w) { out.push_back(w); });
    return out;
}

std::vector<std::size_t> count_leading_per_order(unsigned max_order, std::size_t cap) {
    mpz_class total = 0;
    for (unsigned m = 0; m <= max_order; ++m) total += catalan(m);
    check_cap(total, cap, "leading");

    std::vector<std::size_t> counts(max_order + 1, 0);
    for (unsigned m = 0; m <= max_order; ++m) {
        std::size_t c = 0;
        dfs_order(m, /*leading=*/true, [&](const BinaryWord&) { ++c; });
        counts[m] = c;
    }
    return counts;
}

}  // namespace takagi
