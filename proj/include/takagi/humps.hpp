#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "takagi/takagi.hpp"

namespace takagi {

/// Geometry attached to a balanced word of order m with left endpoint x0:
///   I  = [x0, x0 + 4^-m]                      (base interval)
///   J  = [T(x0), T(x0) + (2/3) 4^-m]          (full height interval)
///   Jt = [T(x0), T(x0) + (1/2) 4^-m]          (truncated height interval)
/// The graph over I is a similar copy of the whole graph; `leading` marks
/// words whose walk never goes negative.
struct Hump {
    BinaryWord word;
    Dyadic x0;
    unsigned order{0};
    unsigned generation{0};
    bool leading{false};
    RatInterval I;
    RatInterval J;
    RatInterval Jt;
};

/// Builds the hump of a balanced word. Throws StructureError otherwise.
Hump hump(const BinaryWord& balanced_word);

/// Hump of the concatenation outer . inner; both inputs must be leading
/// balanced words, and the result is again leading and nested inside outer.
Hump compose(const BinaryWord& outer, const BinaryWord& inner);

/// Hump of (01)^n, the staircase whose truncated height intervals tile
/// [0, 2/3): Jt = [(2/3)(1 - 4^-n), (2/3)(1 - 4^-(n+1))].
Hump staircase(unsigned n);

/// Whether an endpoint of a truncated height interval counts as a hit.
enum class Boundary { Closed, HalfOpenRight };

/// All humps of order <= max_order whose truncated height interval contains
/// y under the boundary policy, sorted by (order, x0). With `leading_only`
/// the enumeration runs over leading words (Catalan-many per order).
std::vector<Hump> hits_truncated(const Rational& y, unsigned max_order, bool leading_only = true,
                                 Boundary boundary = Boundary::Closed);

/// A point of the monotone spine: the subset of [0,1] left after removing
/// every generation-1 hump base, on which the function restricted to
/// [0, 1/2) is strictly increasing. Produced by inversion; the point is
/// either pinned exactly (periodicity detected and verified) or enclosed to
/// the requested width.
struct SpinePoint {
    RatInterval enclosure;            // contains the point; degenerate when exact
    std::optional<Rational> exact;    // set when the digits were certified periodic
    bool prefix_walk_ok{false};       // walk of the emitted digits stays off zero
    BinaryWord prefix;                // emitted digits (advisory)
    RatInterval level_enclosure;      // encloses T over `enclosure`
};

/// Inverts y in [0, 1/2] along the spine: encloses the unique spine point x
/// with T(x) = y to width <= 2^-precision_bits (both in x and in the level
/// enclosure), by digit-wise bisection pruned to walks that never return to
/// zero. Reports the exact rational when the emitted digits become periodic
/// within the budget. Strictly monotone in y.
SpinePoint spine_invert(const Rational& y, unsigned precision_bits);

/// Deterministic batch inversion (parallel map) and its serial reference.
std::vector<SpinePoint> batch_spine_invert(const std::vector<Rational>& ys, unsigned precision_bits);
std::vector<SpinePoint> batch_spine_invert_serial(const std::vector<Rational>& ys, unsigned precision_bits);

/// The two intersection points of the horizontal line at level y with the
/// truncated hump of h (leading humps only): left point x0 + 4^-m xi and
/// right point x0 + 4^-m (1 - xi), where T(xi) = 4^m (y - T(x0)) on the
/// spine. Throws DomainError when y is outside Jt(h).
std::pair<SpinePoint, SpinePoint> hump_level_points(const Hump& h, const Rational& y,
                                                    unsigned precision_bits = 48);

/// True iff y = T(x0) + (2/3) 4^-m for some balanced word of order m <=
/// max_order, i.e. y is the right endpoint of a full height interval J.
/// Rationals whose reduced denominator does not have odd part exactly 3 can
/// never be such endpoints; for the rest each order is searched exactly.
bool is_hump_range_right_endpoint(const Rational& y, unsigned max_order);

}  // namespace takagi
