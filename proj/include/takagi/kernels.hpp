#pragma once

#include <cstdint>
#include <vector>

#include "takagi/caps.hpp"
#include "takagi/takagi.hpp"

namespace takagi::kernels {

// Data-parallel inner loops, each with a serial reference implementation kept
// for testing; tools/bench.cpp compares the two. All parallel variants are
// deterministic: work is sharded by index or prefix and merged in order.

/// Compact leading-hump record: word bits (numeral) of order `order`, its
/// generation, and T(x0) = t_num / 4^order. Fits enumeration up to order 15.
struct HumpEntry {
    uint32_t word_bits{0};
    uint8_t order{0};
    uint8_t generation{0};
    int64_t t_num{0};
};

/// All leading humps of order <= max_order, sorted by (order, word value).
/// Sharded by word prefix across threads, merged in prefix order.
std::vector<HumpEntry> leading_hump_table(unsigned max_order, std::size_t cap = enumeration_cap());
std::vector<HumpEntry> leading_hump_table_serial(unsigned max_order, std::size_t cap = enumeration_cap());

/// T at every dyadic k/2^depth, k = 0..2^depth, in index order.
std::vector<Rational> graph_values(unsigned depth);
std::vector<Rational> graph_values_serial(unsigned depth);

struct GraphMax {
    Dyadic argmax;   // smallest maximizer
    Rational value;
};

/// Exact maximum of T over dyadics of the given depth (ties resolved to the
/// smallest point, same as a left-to-right serial scan).
GraphMax graph_max(unsigned depth);
GraphMax graph_max_serial(unsigned depth);

/// Exact batch evaluation in input order.
std::vector<Rational> batch_takagi(const std::vector<Rational>& xs);
std::vector<Rational> batch_takagi_serial(const std::vector<Rational>& xs);

/// Monte-Carlo average of the number of truncated leading humps of order <=
/// max_order whose height interval contains a uniform y in [0, 2/3]. The
/// per-sample generator is seeded from (seed, index), so the exact rational
/// result (hit count / samples) is reproducible and schedule-independent.
Rational mc_average_hits(unsigned max_order, std::size_t samples, std::uint64_t seed);
Rational mc_average_hits_serial(unsigned max_order, std::size_t samples, std::uint64_t seed);

/// splitmix64 stream used by the Monte-Carlo kernel.
std::uint64_t splitmix64(std::uint64_t state);

}  // namespace takagi::kernels
