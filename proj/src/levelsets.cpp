#include "takagi/levelsets.hpp"

#include <omp.h>

#include <algorithm>

#include "takagi/kernels.hpp"

namespace takagi {

bool LevelSetReport::contains(const Rational& x) const {
    for (const Rational& p : exact_points)
        if (p == x) return true;
    for (const RatInterval& b : brackets)
        if (b.contains(x)) return true;
    return false;
}

namespace {

struct Node {
    std::uint64_t k{0};  // interval [k/2^d, (k+1)/2^d]
    Rational base;
    long slope{0};
};

// Children of one node that keep y inside their range enclosure; appends to
// `out`, records exact dyadic hits in `hits`.
void refine_node(const Node& nd, unsigned child_depth, const Rational& y, std::vector<Node>& out,
                 std::vector<Rational>& hits) {
    const Rational unit = pow2_inv(child_depth);
    for (int bit = 0; bit <= 1; ++bit) {
        Node child;
        child.k = (nd.k << 1) | static_cast<unsigned>(bit);
        child.slope = nd.slope + (bit ? -1 : +1);
        child.base = bit ? nd.base + Rational(nd.slope + 1) * unit : nd.base;
        Rational lo = child.base + Rational(std::min(child.slope, 0L)) * unit;
        Rational hi = child.base + (Rational(std::max(child.slope, 0L)) + Rational(2, 3)) * unit;
        if (y < lo || y > hi) continue;
        if (child.base == y)
            hits.push_back(Rational(mpz_class(static_cast<unsigned long>(child.k)), pow2(child_depth)));
        out.push_back(std::move(child));
    }
}

}  // namespace

LevelSetReport solve(const Rational& y, unsigned depth, const SolveOptions& opts) {
    if (y.sign() < 0 || y > Rational(2, 3)) throw DomainError("solve requires y in [0, 2/3]");
    if (depth > opts.max_depth)
        throw DomainError("solve depth " + std::to_string(depth) + " exceeds configured max " +
                          std::to_string(opts.max_depth));

    LevelSetReport rep;
    rep.y = y;
    rep.depth = depth;

    std::vector<Rational> exact_list;

    if (y.sign() == 0) exact_list.push_back(Rational(1));  // right endpoint x = 1

    std::vector<Node> frontier{Node{}};
    unsigned d = 0;
    while (d < depth) {
        const unsigned child_depth = d + 1;
        std::vector<Node> next;
        if (opts.parallel && frontier.size() >= 1024) {
            const int nthreads = omp_get_max_threads();
            std::vector<std::vector<Node>> parts(nthreads);
            std::vector<std::vector<Rational>> hit_parts(nthreads);
#pragma omp parallel num_threads(nthreads)
            {
                const int t = omp_get_thread_num();
                const int T = omp_get_num_threads();
                const std::size_t lo = frontier.size() * t / T, hi = frontier.size() * (t + 1) / T;
                for (std::size_t i = lo; i < hi; ++i)
                    refine_node(frontier[i], child_depth, y, parts[t], hit_parts[t]);
            }
            std::size_t total = 0;
            for (const auto& p : parts) total += p.size();
            next.reserve(total);
            for (int t = 0; t < nthreads; ++t) {
                next.insert(next.end(), parts[t].begin(), parts[t].end());
                exact_list.insert(exact_list.end(), hit_parts[t].begin(), hit_parts[t].end());
            }
        } else {
            next.reserve(frontier.size() * 2);
            for (const Node& nd : frontier) refine_node(nd, child_depth, y, next, exact_list);
        }

        if (next.size() > opts.bracket_cap) {
            rep.truncated = true;
            break;
        }
        frontier = std::move(next);
        d = child_depth;
        rep.growth.emplace_back(d, frontier.size());
    }
    rep.depth_reached = d;

    // harvest exact level points from truncated leading humps
    for (const Hump& h : hits_truncated(y, opts.harvest_order, true, Boundary::Closed)) {
        auto [left, right] = hump_level_points(h, y, opts.harvest_precision);
        if (left.exact) exact_list.push_back(*left.exact);
        if (right.exact) exact_list.push_back(*right.exact);
    }

    std::sort(exact_list.begin(), exact_list.end());
    exact_list.erase(std::unique(exact_list.begin(), exact_list.end()), exact_list.end());
    rep.exact_points = std::move(exact_list);

    rep.brackets.reserve(frontier.size());
    const Rational unit = pow2_inv(d);
    for (const Node& nd : frontier) {
        Rational lo(mpz_class(static_cast<unsigned long>(nd.k)), pow2(d));
        rep.brackets.emplace_back(lo, lo + unit);
    }
    rep.complete_cover = true;
    return rep;
}

bool member(const Rational& x, const Rational& y) {
    if (x.sign() < 0 || x > Rational(1)) throw DomainError("member requires x in [0,1]");
    return takagi_rational(x) == y;
}

std::pair<std::size_t, std::vector<Hump>> count_finite_locals(const Rational& y, unsigned max_order,
                                                              Boundary boundary) {
    std::vector<Hump> hits = hits_truncated(y, max_order, true, boundary);
    return {hits.size(), std::move(hits)};
}

std::vector<LocalClassRecord> finite_local_reps(const Rational& y, unsigned max_order,
                                                Boundary boundary, unsigned precision_bits) {
    std::vector<LocalClassRecord> out;
    for (Hump& h : hits_truncated(y, max_order, true, boundary)) {
        LocalClassRecord rec;
        auto [left, right] = hump_level_points(h, y, precision_bits);
        rec.left = std::move(left);
        rec.right = std::move(right);
        rec.witness = std::move(h);
        rec.exact = rec.left.exact.has_value();
        if (rec.exact) {
            rec.representative = PeriodicReal::from_rational(*rec.left.exact);
            LocalLevelSet cls = local_level_set(rec.representative);
            rec.members = std::move(cls.members);
            rec.size = rec.members.size();
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<SpinePoint> approach_sequence(const PeriodicReal& x, std::size_t count,
                                          unsigned precision_bits, unsigned endpoint_check_order) {
    if (!has_nonneg_walk(x)) throw DomainError("approach_sequence requires an everywhere-nonnegative walk");
    PeriodicWalk w = periodic_walk(x);
    if (!w.infinite_zeros)
        throw DomainError("approach_sequence requires infinitely many walk zeros (Cantor-type class)");

    const Rational xr = x.to_rational();
    const Rational y = takagi_rational(xr);

    // balanced prefixes at the first `count` walk zeros
    std::vector<std::size_t> zeros;
    {
        std::size_t j = 0;
        long dwalk = 0;
        const std::size_t limit = x.preperiod.size() + x.period.size() * (count + 2);
        while (zeros.size() < count && j < limit) {
            ++j;
            dwalk += x.digit(j) ? -1 : +1;
            if (dwalk == 0) zeros.push_back(j);
        }
    }
    if (zeros.size() < count) throw DomainError("could not locate enough walk zeros");

    unsigned max_prefix_order = static_cast<unsigned>(zeros.back() / 2);
    if (is_hump_range_right_endpoint(y, std::max(endpoint_check_order, max_prefix_order + 2)))
        throw DomainError("level is a hump-range right endpoint; the two-point intersection degenerates");

    std::vector<SpinePoint> out;
    for (std::size_t zi = 0; zi < count; ++zi) {
        BinaryWord prefix;
        prefix.bits.reserve(zeros[zi]);
        for (std::size_t j = 1; j <= zeros[zi]; ++j) prefix.bits.push_back(x.digit(j));
        Hump outer = hump(prefix);

        // locate the staircase rung inside this hump whose truncated interval
        // holds y, then intersect
        Rational y_local = (y - outer.Jt.lo) * Rational(pow2(2 * outer.order));
        unsigned rung = 0;
        while (true) {
            Rational lo = Rational(2, 3) * (Rational(1) - pow2_inv(2 * rung));
            Rational hi = Rational(2, 3) * (Rational(1) - pow2_inv(2 * (rung + 1)));
            if (y_local >= lo && y_local <= hi) break;
            ++rung;
            if (rung > 4 * precision_bits + 64) throw ResourceError("staircase index out of budget");
        }
        BinaryWord stair;
        for (unsigned i = 0; i < rung; ++i) {
            stair.bits.push_back(0);
            stair.bits.push_back(1);
        }
        Hump inner = compose(prefix, stair);
        out.push_back(hump_level_points(inner, y, precision_bits).first);
    }
    return out;
}

JtMass jt_mass(unsigned max_order) {
    JtMass out;
    std::vector<std::size_t> counts = count_leading_per_order(max_order);
    out.closed_form = Rational(0);
    for (unsigned m = 0; m <= max_order; ++m)
        out.closed_form += Rational(mpz_class(static_cast<unsigned long>(counts[m])), mpz_class(1)) *
                           Rational(1, 2) * pow2_inv(2 * m);

    out.enumerated = Rational(0);
    for (const auto& e : kernels::leading_hump_table(max_order)) {
        Rational t0(mpz_class(static_cast<long>(e.t_num)), pow2(2 * e.order));
        RatInterval jt(t0, t0 + Rational(1, 2) * pow2_inv(2 * e.order));
        out.enumerated += jt.width();
    }
    return out;
}

Rational average_count_exact(unsigned max_order) {
    // endpoint sweep over the scaled integer endpoints of every truncated
    // interval; integral of the piecewise-constant count, divided by 2/3
    auto table = kernels::leading_hump_table(max_order);
    const unsigned shift = 2 * max_order + 1;
    struct Event {
        std::uint64_t value;
        int delta;
    };
    std::vector<Event> events;
    events.reserve(table.size() * 2);
    for (const auto& e : table) {
        unsigned up = shift - 2 * e.order;
        std::uint64_t lo = static_cast<std::uint64_t>(e.t_num) << up;
        events.push_back({lo, +1});
        events.push_back({lo + (std::uint64_t(1) << (up - 1)), -1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.value < b.value; });

    unsigned __int128 integral = 0;
    long active = 0;
    for (std::size_t i = 0; i < events.size();) {
        std::uint64_t v = events[i].value;
        while (i < events.size() && events[i].value == v) {
            active += events[i].delta;
            ++i;
        }
        if (i < events.size())
            integral += static_cast<unsigned __int128>(active) * (events[i].value - v);
    }

    // integral / 2^shift, averaged over an interval of length 2/3
    unsigned long long hi64 = static_cast<unsigned long long>(integral >> 64);
    unsigned long long lo64 = static_cast<unsigned long long>(integral);
    mpz_class total;
    unsigned long long words[2] = {hi64, lo64};
    mpz_import(total.get_mpz_t(), 2, 1, sizeof(words[0]), 0, 0, words);
    return Rational(total, pow2(shift)) * Rational(3, 2);
}

ClassificationReport classify(const Rational& y, unsigned depth, unsigned max_order) {
    if (y.sign() < 0 || y > Rational(2, 3)) throw DomainError("classify requires y in [0, 2/3]");
    ClassificationReport rep;
    rep.y = y;
    rep.depth = depth;
    rep.max_order = max_order;

    SolveOptions opts;
    opts.harvest_order = std::min(max_order, 10u);
    LevelSetReport ls = solve(y, depth, opts);
    rep.bracket_growth = ls.growth;
    rep.exact_points_found = ls.exact_points.size();
    rep.truncated = ls.truncated;
    for (const Rational& p : ls.exact_points)
        if (p.is_dyadic()) rep.dyadic_image_hit = true;

    auto table = kernels::leading_hump_table(max_order);
    std::vector<std::size_t> per_order(max_order + 1, 0);
    for (const auto& e : table) {
        Rational t0(mpz_class(static_cast<long>(e.t_num)), pow2(2 * e.order));
        Rational hi = t0 + Rational(1, 2) * pow2_inv(2 * e.order);
        if (y < t0 || y > hi) continue;
        per_order[e.order] += 1;
        if (y == t0 || y == hi) rep.boundary_hit = true;
    }
    std::size_t acc = 0;
    for (unsigned m = 0; m <= max_order; ++m) {
        acc += per_order[m];
        rep.finite_local_count_at_order[m] = acc;
    }

    rep.right_endpoint_hit = is_hump_range_right_endpoint(y, max_order);

    if (max_order >= 3) {
        std::size_t tail = rep.finite_local_count_at_order[max_order];
        rep.count_stabilized = tail == rep.finite_local_count_at_order[max_order - 3];
    }

    // growth evidence: sustained branching of the bracket frontier
    if (ls.growth.size() >= 8) {
        std::size_t n = ls.growth.size();
        std::size_t c_late = ls.growth[n - 1].second;
        std::size_t c_early = ls.growth[n - 7].second;
        if (c_late >= 64 && c_late >= c_early * 4) rep.cantor_growth_evidence = true;
    }

    rep.evidence.push_back("finite-local count at max order: " +
                           std::to_string(rep.finite_local_count_at_order[max_order]) +
                           (rep.count_stabilized ? " (stable over last 3 orders)" : " (still growing)"));
    if (rep.cantor_growth_evidence)
        rep.evidence.push_back("bracket frontier keeps branching: Cantor-type level evidence only");
    if (rep.boundary_hit)
        rep.evidence.push_back("y sits on a truncated-interval endpoint; counts depend on boundary policy");
    if (rep.right_endpoint_hit)
        rep.evidence.push_back("y is a full-interval right endpoint up to the checked order");
    if (rep.dyadic_image_hit) rep.evidence.push_back("y is attained at a dyadic rational");
    rep.evidence.push_back("all counts are lower bounds at the given budget; no cardinality verdicts");
    return rep;
}

}  // namespace takagi
