#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "takagi/caps.hpp"
#include "takagi/humps.hpp"

namespace takagi {

/// Certified description of the level set {x in [0,1] : T(x) = y} at a
/// refinement depth: exact points (verified equalities) plus a sound cover of
/// dyadic brackets. Every level point lies in some bracket or equals an exact
/// point; truncation (bracket cap) widens brackets but never drops cover.
struct LevelSetReport {
    Rational y;
    unsigned depth{0};          // requested refinement depth
    unsigned depth_reached{0};  // actual depth (smaller only when truncated)
    std::vector<Rational> exact_points;
    std::vector<RatInterval> brackets;
    bool complete_cover{true};
    bool truncated{false};
    std::vector<std::pair<unsigned, std::size_t>> growth;  // (depth, surviving intervals)

    bool contains(const Rational& x) const;
};

struct SolveOptions {
    unsigned max_depth{40};
    unsigned harvest_order{8};        // truncated leading humps probed for exact points
    unsigned harvest_precision{48};
    std::size_t bracket_cap{takagi::bracket_cap()};
    bool parallel{true};
};

/// Breadth-first refinement of dyadic intervals keeping those whose range
/// enclosure contains y; dyadic endpoints with exact hits and, where the
/// spine inversion certifies them, the two level points of each hit truncated
/// leading hump are promoted to exact points.
LevelSetReport solve(const Rational& y, unsigned depth, const SolveOptions& opts = SolveOptions{});

/// Exact membership test T(x) = y.
bool member(const Rational& x, const Rational& y);

/// Lower bound for the number of finite local level sets inside the level
/// set at y: the truncated leading humps of order <= max_order meeting the
/// level line, one finite class per hump.
std::pair<std::size_t, std::vector<Hump>> count_finite_locals(const Rational& y, unsigned max_order,
                                                              Boundary boundary = Boundary::Closed);

/// One finite local level set, witnessed by a truncated leading hump the
/// level line meets. When the left intersection point is certified exact the
/// whole class is enumerated; otherwise the record carries enclosures only
/// and is marked inexact.
struct LocalClassRecord {
    PeriodicReal representative;        // left intersection point (exact records)
    std::vector<PeriodicReal> members;  // the full class, sorted (exact records)
    Hump witness;
    std::size_t size{0};
    bool exact{false};
    SpinePoint left;
    SpinePoint right;
};

std::vector<LocalClassRecord> finite_local_reps(const Rational& y, unsigned max_order,
                                                Boundary boundary = Boundary::Closed,
                                                unsigned precision_bits = 48);

/// For x with everywhere-nonnegative walk and infinitely many walk zeros:
/// points z_1..z_n of the level set of y = T(x), one inside each truncated
/// leading hump found within the balanced prefix of x at its k-th walk zero.
/// Each z_k has finitely many walk zeros, z_k != x, and |z_k - x| <= the
/// prefix interval length, so the sequence contracts strictly toward x.
/// Throws DomainError for x with finitely many zeros or y among the
/// hump-range right endpoints (checked to `endpoint_check_order`).
std::vector<SpinePoint> approach_sequence(const PeriodicReal& x, std::size_t count,
                                          unsigned precision_bits,
                                          unsigned endpoint_check_order = 16);

/// Total length of the truncated height intervals over all leading humps of
/// order <= max_order, by two independent routes: per-order counts times the
/// closed-form width, and direct summation over enumerated humps. Both are
/// exact and must agree; the sequence increases toward 1.
struct JtMass {
    Rational closed_form;
    Rational enumerated;
};
JtMass jt_mass(unsigned max_order);

/// Exact Lebesgue average over y in [0, 2/3] of the number of truncated
/// leading humps of order <= max_order containing y, via an endpoint sweep.
/// Equals (3/2) * jt_mass and increases toward 3/2.
Rational average_count_exact(unsigned max_order);

/// Budgeted evidence aggregation for a level: solver growth, per-order local
/// counts, and boundary flags. Counts are lower bounds; no claim about
/// infinite cardinalities is ever emitted.
struct ClassificationReport {
    Rational y;
    unsigned depth{0};
    unsigned max_order{0};
    std::map<unsigned, std::size_t> finite_local_count_at_order;
    std::size_t exact_points_found{0};
    std::vector<std::pair<unsigned, std::size_t>> bracket_growth;
    bool boundary_hit{false};          // y is an endpoint of some truncated height interval
    bool right_endpoint_hit{false};    // y is a full-interval right endpoint (order-bounded check)
    bool dyadic_image_hit{false};      // an exact dyadic level point was found
    bool cantor_growth_evidence{false};
    bool count_stabilized{false};
    bool truncated{false};
    std::vector<std::string> evidence;
};

ClassificationReport classify(const Rational& y, unsigned depth, unsigned max_order);

}  // namespace takagi
