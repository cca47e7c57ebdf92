#include "takagi/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace takagi::kernels {

namespace {

mpz_class catalan_sum(unsigned max_order) {
    mpz_class total = 0;
    for (unsigned m = 0; m <= max_order; ++m) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), 2 * m, m);
        total += b / (m + 1);
    }
    return total;
}

// DFS over leading words of order m starting from a prefix state, emitting
// HumpEntry records in lexicographic word order. B tracks the partial-sum
// numerator (T(x0) = B / 4^m at the leaf), s the walk, z the zero count.
void dfs_leading(unsigned m, std::size_t j, uint32_t bits, int64_t B, long s, unsigned z,
                 std::vector<HumpEntry>& out) {
    const std::size_t n = 2 * m;
    if (j == n) {
        out.push_back(HumpEntry{bits, static_cast<uint8_t>(m), static_cast<uint8_t>(z), B});
        return;
    }
    const std::size_t left = n - j - 1;
    // bit 0
    if (static_cast<std::size_t>(s + 1) <= left)
        dfs_leading(m, j + 1, bits << 1, B << 1, s + 1, z + (s + 1 == 0 ? 1u : 0u), out);
    // bit 1 (walk must stay nonnegative)
    if (s >= 1 && static_cast<std::size_t>(s - 1) <= left)
        dfs_leading(m, j + 1, (bits << 1) | 1, (B << 1) + s + 1, s - 1, z + (s - 1 == 0 ? 1u : 0u), out);
}

struct Prefix {
    uint32_t bits;
    std::size_t len;
    int64_t B;
    long s;
    unsigned z;
};

// Feasible leading prefixes of the given length for order m, in lex order.
std::vector<Prefix> leading_prefixes(unsigned m, std::size_t len) {
    std::vector<Prefix> out;
    auto rec = [&](auto&& self, std::size_t j, uint32_t bits, int64_t B, long s, unsigned z) -> void {
        if (j == len) {
            out.push_back(Prefix{bits, len, B, s, z});
            return;
        }
        const std::size_t left = 2 * m - j - 1;
        if (static_cast<std::size_t>(s + 1) <= left)
            self(self, j + 1, bits << 1, B << 1, s + 1, z + (s + 1 == 0 ? 1u : 0u));
        if (s >= 1 && static_cast<std::size_t>(s - 1) <= left)
            self(self, j + 1, (bits << 1) | 1, (B << 1) + s + 1, s - 1, z + (s - 1 == 0 ? 1u : 0u));
    };
    rec(rec, 0, 0, 0, 0, 0);
    return out;
}

void dfs_from_prefix(unsigned m, const Prefix& p, std::vector<HumpEntry>& out) {
    dfs_leading(m, p.len, p.bits, p.B, p.s, p.z, out);
}

std::vector<HumpEntry> hump_table_impl(unsigned max_order, std::size_t cap, bool parallel) {
    if (max_order > 15) throw ResourceError("leading hump table supports order <= 15");
    mpz_class total = catalan_sum(max_order);
    if (total > static_cast<unsigned long>(cap))
        throw ResourceError("leading enumeration needs " + total.get_str() + " words, exceeding cap " +
                            std::to_string(cap));

    std::vector<HumpEntry> table;
    table.reserve(total.get_ui());
    for (unsigned m = 0; m <= max_order; ++m) {
        if (m == 0) {
            table.push_back(HumpEntry{0, 0, 0, 0});
            continue;
        }
        const std::size_t shard_len = std::min<std::size_t>(2 * m, 8);
        std::vector<Prefix> prefixes = leading_prefixes(m, shard_len);
        if (!parallel || prefixes.size() < 4) {
            for (const Prefix& p : prefixes) dfs_from_prefix(m, p, table);
            continue;
        }
        std::vector<std::vector<HumpEntry>> shards(prefixes.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < prefixes.size(); ++i) dfs_from_prefix(m, prefixes[i], shards[i]);
        for (auto& shard : shards) table.insert(table.end(), shard.begin(), shard.end());
    }
    return table;
}

}  // namespace

std::vector<HumpEntry> leading_hump_table(unsigned max_order, std::size_t cap) {
    return hump_table_impl(max_order, cap, true);
}

std::vector<HumpEntry> leading_hump_table_serial(unsigned max_order, std::size_t cap) {
    return hump_table_impl(max_order, cap, false);
}

// ── graph sampling ──────────────────────────────────────────────────────────

namespace {

// T(k/2^depth) via the integer walk recursion; exact, no bignums needed for
// depth <= 24 (B < depth * 2^depth).
int64_t graph_numerator(uint64_t k, unsigned depth) {
    int64_t B = 0;
    long s = 0;
    for (unsigned j = 0; j < depth; ++j) {
        unsigned bit = (k >> (depth - 1 - j)) & 1u;
        B <<= 1;
        if (bit) {
            B += s + 1;
            s -= 1;
        } else {
            s += 1;
        }
    }
    return B;
}

}  // namespace

std::vector<Rational> graph_values_serial(unsigned depth) {
    if (depth > 24) throw ResourceError("graph sampling supports depth <= 24");
    const uint64_t count = (uint64_t(1) << depth) + 1;
    std::vector<Rational> out(count);
    for (uint64_t k = 0; k < count; ++k)
        out[k] = Rational(mpz_class(static_cast<unsigned long>(graph_numerator(k, depth))), pow2(depth));
    return out;
}

std::vector<Rational> graph_values(unsigned depth) {
    if (depth > 24) throw ResourceError("graph sampling supports depth <= 24");
    const uint64_t count = (uint64_t(1) << depth) + 1;
    std::vector<Rational> out(count);
#pragma omp parallel for schedule(static)
    for (uint64_t k = 0; k < count; ++k)
        out[k] = Rational(mpz_class(static_cast<unsigned long>(graph_numerator(k, depth))), pow2(depth));
    return out;
}

GraphMax graph_max_serial(unsigned depth) {
    if (depth > 24) throw ResourceError("graph sampling supports depth <= 24");
    const uint64_t count = (uint64_t(1) << depth) + 1;
    int64_t best = -1;
    uint64_t best_k = 0;
    for (uint64_t k = 0; k < count; ++k) {
        int64_t b = graph_numerator(k, depth);
        if (b > best) {
            best = b;
            best_k = k;
        }
    }
    return GraphMax{Dyadic(mpz_class(static_cast<unsigned long>(best_k)), depth),
                    Rational(mpz_class(static_cast<unsigned long>(best)), pow2(depth))};
}

GraphMax graph_max(unsigned depth) {
    if (depth > 24) throw ResourceError("graph sampling supports depth <= 24");
    const uint64_t count = (uint64_t(1) << depth) + 1;
    const int nthreads = omp_get_max_threads();
    std::vector<int64_t> best(nthreads, -1);
    std::vector<uint64_t> best_k(nthreads, 0);
#pragma omp parallel num_threads(nthreads)
    {
        const int t = omp_get_thread_num();
        const int T = omp_get_num_threads();
        const uint64_t lo = count * t / T, hi = count * (t + 1) / T;
        for (uint64_t k = lo; k < hi; ++k) {
            int64_t b = graph_numerator(k, depth);
            if (b > best[t]) {
                best[t] = b;
                best_k[t] = k;
            }
        }
    }
    // in-order merge keeps the smallest maximizer, matching the serial scan
    int64_t b = -1;
    uint64_t bk = 0;
    for (int t = 0; t < nthreads; ++t)
        if (best[t] > b) {
            b = best[t];
            bk = best_k[t];
        }
    return GraphMax{Dyadic(mpz_class(static_cast<unsigned long>(bk)), depth),
                    Rational(mpz_class(static_cast<unsigned long>(b)), pow2(depth))};
}

// ── batch evaluation ────────────────────────────────────────────────────────

std::vector<Rational> batch_takagi_serial(const std::vector<Rational>& xs) {
    std::vector<Rational> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = takagi_rational(xs[i]);
    return out;
}

std::vector<Rational> batch_takagi(const std::vector<Rational>& xs) {
    std::vector<Rational> out(xs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = takagi_rational(xs[i]);
    return out;
}

// ── Monte-Carlo hit counting ────────────────────────────────────────────────

std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Sample y_i = r_i / (3 * 2^63) in [0, 2/3); count closed hits against the
// interval family {[lo, lo + half] scaled to denominator 2^(2M+1)} via two
// binary searches over sorted endpoints. All comparisons are exact in 128
// bits: lo/2^(2M+1) <= r/(3*2^63) iff lo * 3 * 2^63 <= r * 2^(2M+1).
struct HitCounter {
    std::vector<uint64_t> lo_sorted;
    std::vector<uint64_t> hi_sorted;
    unsigned common_shift;  // 2M+1

    explicit HitCounter(const std::vector<HumpEntry>& table, unsigned max_order) {
        common_shift = 2 * max_order + 1;
        lo_sorted.reserve(table.size());
        hi_sorted.reserve(table.size());
        for (const HumpEntry& h : table) {
            // Jt = [t, t + 4^-m / 2], t = t_num / 4^m; scale to 2^(2M+1)
            unsigned up = common_shift - 2 * h.order;
            uint64_t lo = static_cast<uint64_t>(h.t_num) << up;
            uint64_t hi = lo + (uint64_t(1) << (up - 1));
            lo_sorted.push_back(lo);
            hi_sorted.push_back(hi);
        }
        std::sort(lo_sorted.begin(), lo_sorted.end());
        std::sort(hi_sorted.begin(), hi_sorted.end());
    }

    std::size_t count(uint64_t r) const {
        // #(lo <= y) - #(hi < y), exact cross-multiplied comparisons
        const unsigned __int128 ry = static_cast<unsigned __int128>(r) << common_shift;
        auto scaled = [](uint64_t e) {
            return static_cast<unsigned __int128>(e) * 3u << 63;
        };
        std::size_t a = std::upper_bound(lo_sorted.begin(), lo_sorted.end(), ry,
                                         [&](unsigned __int128 y, uint64_t e) { return y < scaled(e); }) -
                        lo_sorted.begin();
        std::size_t b = std::lower_bound(hi_sorted.begin(), hi_sorted.end(), ry,
                                         [&](uint64_t e, unsigned __int128 y) { return scaled(e) < y; }) -
                        hi_sorted.begin();
        return a - b;
    }
};

Rational mc_impl(unsigned max_order, std::size_t samples, std::uint64_t seed, bool parallel) {
    if (samples == 0) throw DomainError("mc_average_hits requires samples >= 1");
    HitCounter counter(leading_hump_table(max_order), max_order);
    std::uint64_t total = 0;
    if (parallel) {
#pragma omp parallel for schedule(static) reduction(+ : total)
        for (std::size_t i = 0; i < samples; ++i)
            total += counter.count(splitmix64(seed + 0x632be59bd9b4e019ULL * i));
    } else {
        for (std::size_t i = 0; i < samples; ++i)
            total += counter.count(splitmix64(seed + 0x632be59bd9b4e019ULL * i));
    }
    return Rational(mpz_class(static_cast<unsigned long>(total)),
                    mpz_class(static_cast<unsigned long>(samples)));
}

}  // namespace

Rational mc_average_hits(unsigned max_order, std::size_t samples, std::uint64_t seed) {
    return mc_impl(max_order, samples, seed, true);
}

Rational mc_average_hits_serial(unsigned max_order, std::size_t samples, std::uint64_t seed) {
    return mc_impl(max_order, samples, seed, false);
}

}  // namespace takagi::kernels
