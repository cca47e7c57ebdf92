#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "takagi/caps.hpp"
#include "takagi/rational.hpp"

namespace takagi {

/// Finite binary word e_1 ... e_n. Words name dyadic intervals: the word w of
/// length n stands for [0.w, 0.w + 2^-n]. Dyadic rationals always use the
/// terminating (all-zero tail) expansion.
struct BinaryWord {
    std::vector<uint8_t> bits;

    BinaryWord() = default;
    explicit BinaryWord(std::vector<uint8_t> b) : bits(std::move(b)) {}

    std::size_t size() const { return bits.size(); }
    bool empty() const { return bits.empty(); }
    uint8_t operator[](std::size_t i) const { return bits[i]; }

    void push_back(uint8_t b) { bits.push_back(b); }

    std::string str() const;
    static BinaryWord parse(std::string_view text);

    /// Integer value of the bits read as a big-endian binary numeral.
    mpz_class numeral() const;

    /// Left endpoint of the word's dyadic interval, 0.w = numeral / 2^n.
    Dyadic left_endpoint() const;

    BinaryWord concat(const BinaryWord& tail) const;
    BinaryWord complemented() const;

    friend bool operator==(const BinaryWord& a, const BinaryWord& b) { return a.bits == b.bits; }
    friend bool operator<(const BinaryWord& a, const BinaryWord& b) { return a.bits < b.bits; }
};

/// The digit walk D_1 ... D_n of a word: D_j - D_{j-1} = +1 for a 0-bit and
/// -1 for a 1-bit, starting from D_0 = 0.
struct Walk {
    std::vector<long> values;
    std::vector<std::size_t> zero_positions;  // 1-indexed j with D_j = 0, sorted

    long final() const { return values.empty() ? 0 : values.back(); }
    long min() const;
};

Walk walk_of(const BinaryWord& w);

/// Classification of a finite word: balanced (even length 2m with D_2m = 0,
/// m its order), generation (number of walk zeros), leading (walk never
/// negative). The empty word is balanced of order 0, generation 0, leading.
struct WordClass {
    bool balanced{false};
    unsigned order{0};       // defined when balanced
    unsigned generation{0};  // number of walk zeros
    bool leading{false};
};

WordClass classify_word(const BinaryWord& w);

/// First n canonical binary digits of x in [0,1). Dyadic x yields its
/// terminating expansion. Throws DomainError outside [0,1).
BinaryWord digits_of(const Rational& x, std::size_t n);

/// Canonical eventually-periodic binary expansion of a rational in [0,1):
/// value = 0.preperiod(period). The preperiod/period pair is minimal, the
/// period is empty exactly for dyadics, and an all-ones period never occurs.
struct PeriodicReal {
    BinaryWord preperiod;
    BinaryWord period;

    PeriodicReal() = default;
    PeriodicReal(BinaryWord pre, BinaryWord per);

    static PeriodicReal from_rational(const Rational& x);
    Rational to_rational() const;

    bool is_dyadic() const { return period.empty(); }

    /// 1-indexed digit e_j of the expansion.
    uint8_t digit(std::size_t j) const;

    /// Renders "0.pre(period)", e.g. "0.0101" or "0.0(01)".
    std::string str() const;
    static PeriodicReal parse(std::string_view text);

    friend bool operator==(const PeriodicReal& a, const PeriodicReal& b) {
        return a.preperiod == b.preperiod && a.period == b.period;
    }
};

/// Exact description of the walk of a periodic real: where it hits zero, and
/// whether it does so infinitely often. For a word with preperiod length a
/// and period length p, D_{a+kp+i} = D_{a+i} + k*drift, which makes every
/// question below decidable.
struct PeriodicWalk {
    bool infinite_zeros{false};
    long drift{0};                       // walk change over one period
    std::vector<std::size_t> zeros;     // all zeros when finite; zeros in the first window otherwise
    std::size_t last_zero{0};           // 0 when there is no zero (finite case)
    long min_value{0};                  // infimum of D_j over all j (meaningful when finite or drift >= 0)
};

PeriodicWalk periodic_walk(const PeriodicReal& x);

/// True when D_j(x) >= bound for every j >= 1.
bool walk_at_least(const PeriodicReal& x, long bound);

/// True when D_j(x) >= 0 for every j (canonical class representatives).
inline bool has_nonneg_walk(const PeriodicReal& x) { return walk_at_least(x, 0); }

/// The reflection x' of x with D_j(x') = |D_j(x)| for every j. Idempotent,
/// preserves the |D| profile (hence the function value), and lands on the
/// everywhere-nonnegative-walk representative of x's class.
PeriodicReal reflect_nonneg(const PeriodicReal& x);

/// A local equivalence class: all reals whose walks match |D_j| for every j.
/// Members are canonical reals; `truncated` marks a finite slice of a Cantor
/// class (infinitely many walk zeros).
struct LocalLevelSet {
    std::vector<PeriodicReal> members;  // sorted by value
    bool truncated{false};
};

/// Enumerates the class of x. Finite classes (finitely many walk zeros) are
/// returned whole: one sign choice per walk excursion, minus flips that would
/// produce a non-canonical all-ones tail. Cantor classes return the members
/// generated by sign choices on the first `depth` excursions, flagged
/// truncated. Guarded by `cap` on the member count.
LocalLevelSet local_level_set(const PeriodicReal& x, std::size_t depth = 8, std::size_t cap = 1u << 20);

/// All balanced words of order <= max_order (optionally of one generation),
/// sorted by (order, numeric value). The empty word is the generation-0
/// element. Throws ResourceError when the enumeration would exceed `cap`.
std::vector<BinaryWord> enumerate_balanced(unsigned max_order,
                                           std::optional<unsigned> generation = std::nullopt,
                                           std::size_t cap = enumeration_cap());

/// All leading balanced words (walk stays >= 0) of order <= max_order,
/// sorted by (order, numeric value); per-order counts are the Catalan
/// numbers.
std::vector<BinaryWord> enumerate_leading(unsigned max_order, std::size_t cap = enumeration_cap());

/// Per-order leading counts [C_0, ..., C_max_order] via the same recursive
/// enumeration as enumerate_leading, without materializing words.
std::vector<std::size_t> count_leading_per_order(unsigned max_order, std::size_t cap = 100'000'000);

}  // namespace takagi
