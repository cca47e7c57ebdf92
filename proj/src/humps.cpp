#include "takagi/humps.hpp"

#include <algorithm>

#include "takagi/kernels.hpp"

namespace takagi {

namespace {

BinaryWord word_from_packed(uint32_t bits, unsigned order) {
    BinaryWord w;
    w.bits.reserve(2 * order);
    for (unsigned i = 0; i < 2 * order; ++i) w.bits.push_back((bits >> (2 * order - 1 - i)) & 1u);
    return w;
}

Hump hump_from_parts(BinaryWord word, unsigned order, unsigned generation, bool leading,
                     const Rational& t0) {
    Hump h;
    h.word = std::move(word);
    h.order = order;
    h.generation = generation;
    h.leading = leading;
    h.x0 = h.word.left_endpoint();
    Rational x0 = dyadic_to_rational(h.x0);
    Rational unit = pow2_inv(2 * order);
    h.I = RatInterval(x0, x0 + unit);
    h.J = RatInterval(t0, t0 + Rational(2, 3) * unit);
    h.Jt = RatInterval(t0, t0 + Rational(1, 2) * unit);
    return h;
}

bool jt_contains(const RatInterval& jt, const Rational& y, Boundary b) {
    if (b == Boundary::Closed) return jt.contains(y);
    return jt.lo <= y && y < jt.hi;
}

}  // namespace

Hump hump(const BinaryWord& balanced_word) {
    WordClass c = classify_word(balanced_word);
    if (!c.balanced) throw StructureError("hump requires a balanced word");
    AffinePart ap = affine_part(balanced_word);
    return hump_from_parts(balanced_word, c.order, c.generation, c.leading, ap.base);
}

Hump compose(const BinaryWord& outer, const BinaryWord& inner) {
    WordClass co = classify_word(outer), ci = classify_word(inner);
    if (!co.balanced || !co.leading) throw StructureError("compose requires a leading outer word");
    if (!ci.balanced || !ci.leading) throw StructureError("compose requires a leading inner word");
    return hump(outer.concat(inner));
}

Hump staircase(unsigned n) {
    BinaryWord w;
    w.bits.reserve(2 * n);
    for (unsigned i = 0; i < n; ++i) {
        w.bits.push_back(0);
        w.bits.push_back(1);
    }
    return hump(w);
}

std::vector<Hump> hits_truncated(const Rational& y, unsigned max_order, bool leading_only,
                                 Boundary boundary) {
    if (y.sign() < 0 || y > Rational(2, 3)) throw DomainError("hits_truncated requires y in [0, 2/3]");
    std::vector<Hump> out;
    if (leading_only) {
        auto table = kernels::leading_hump_table(max_order);
        for (const auto& e : table) {
            Rational t0(mpz_class(static_cast<long>(e.t_num)), pow2(2 * e.order));
            RatInterval jt(t0, t0 + Rational(1, 2) * pow2_inv(2 * e.order));
            if (!jt_contains(jt, y, boundary)) continue;
            out.push_back(hump_from_parts(word_from_packed(e.word_bits, e.order), e.order, e.generation,
                                          true, t0));
        }
        return out;  // table order is already (order, x0)
    }
    for (const BinaryWord& w : enumerate_balanced(max_order)) {
        Hump h = hump(w);
        if (jt_contains(h.Jt, y, boundary)) out.push_back(std::move(h));
    }
    return out;
}

// ── spine inversion ─────────────────────────────────────────────────────────

namespace {

struct SpineNode {
    BinaryWord word;
    mpz_class k;    // left endpoint numerator, word value
    Rational base;  // S_n at the left endpoint
    long slope{0};
};

// Enclosure of T over the node's interval.
RatInterval node_range(const SpineNode& nd, unsigned depth) {
    Rational unit = pow2_inv(depth);
    return RatInterval(nd.base + Rational(std::min(nd.slope, 0L)) * unit,
                       nd.base + (Rational(std::max(nd.slope, 0L)) + Rational(2, 3)) * unit);
}

// Longest common prefix of a word range.
BinaryWord common_prefix(const std::vector<SpineNode>& nodes, std::size_t from, std::size_t to) {
    const BinaryWord& first = nodes[from].word;
    std::size_t n = first.size();
    for (std::size_t i = from + 1; i < to; ++i) {
        const BinaryWord& w = nodes[i].word;
        std::size_t j = 0;
        while (j < n && w[j] == first[j]) ++j;
        n = j;
    }
    BinaryWord w;
    w.bits.assign(first.bits.begin(), first.bits.begin() + n);
    return w;
}

// Start index of the rightmost maximal run of adjacent intervals.
std::size_t rightmost_cluster_begin(const std::vector<SpineNode>& frontier) {
    std::size_t i = frontier.size() - 1;
    while (i > 0 && frontier[i].k == frontier[i - 1].k + 1) --i;
    return i;
}

// Tries to read the emitted digits as an eventually periodic expansion; a
// candidate counts only if its exact value passes the walk condition and
// evaluates exactly to y.
std::optional<Rational> detect_exact(const BinaryWord& digits, const Rational& y) {
    const std::size_t n = digits.size();
    if (n < 24) return std::nullopt;

    auto verify = [&](const PeriodicReal& cand) -> bool {
        return walk_at_least(cand, 1) && takagi_rational(cand.to_rational()) == y;
    };

    // terminating candidate: a long all-zero tail
    std::size_t last_one = n;
    while (last_one > 0 && digits[last_one - 1] == 0) --last_one;
    if (n - last_one >= 16) {
        BinaryWord pre;
        pre.bits.assign(digits.bits.begin(), digits.bits.begin() + last_one);
        PeriodicReal cand(pre, BinaryWord{});
        if (cand.to_rational().sign() == 0) {
            if (y.sign() == 0) return Rational(0);
        } else if (verify(cand)) {
            return cand.to_rational();
        }
    }

    // periodic candidate: smallest period that explains a long suffix
    for (std::size_t ell = 1; ell * 3 <= n; ++ell) {
        // smallest k with digits[i] == digits[i+ell] for every i in [k, n-ell)
        std::size_t k = n - ell;
        while (k > 0 && digits[k - 1] == digits[k - 1 + ell]) --k;
        if (n < k + 2 * ell + 8) continue;
        BinaryWord pre, per;
        pre.bits.assign(digits.bits.begin(), digits.bits.begin() + k);
        per.bits.assign(digits.bits.begin() + k, digits.bits.begin() + k + ell);
        bool all_ones = std::all_of(per.bits.begin(), per.bits.end(), [](uint8_t b) { return b == 1; });
        if (all_ones) continue;
        PeriodicReal cand(pre, per);
        if (verify(cand)) return cand.to_rational();
    }
    return std::nullopt;
}

}  // namespace

// The walk condition D_j >= 1 admits, at levels attained by a dyadic spine
// point, exactly two points: the supremum of the monotone set below a removed
// base interval and that interval's right endpoint. Inversion selects the
// rightmost (matching the strictly increasing extension), which is certified
// exactly once its branch separates from the left one.
SpinePoint spine_invert(const Rational& y, unsigned precision_bits) {
    if (y.sign() < 0 || y > Rational(1, 2)) throw DomainError("spine_invert requires y in [0, 1/2]");
    const Rational tol = pow2_inv(precision_bits);
    const std::size_t min_depth = 64;

    std::vector<SpineNode> frontier{SpineNode{}};
    const std::size_t depth_cap = 8 * std::max<std::size_t>(precision_bits, 64) + 1024;

    SpinePoint out;
    for (std::size_t depth = 1; depth <= depth_cap; ++depth) {
        std::vector<SpineNode> next;
        next.reserve(frontier.size() + 2);
        Rational unit = pow2_inv(static_cast<unsigned>(depth));
        for (SpineNode& nd : frontier) {
            // bit 0: walk up (always >= 1); bit 1: walk down, must stay >= 1
            for (int bit = 0; bit <= 1; ++bit) {
                long s2 = nd.slope + (bit ? -1 : +1);
                if (s2 < 1) continue;
                SpineNode child;
                child.word = nd.word;
                child.word.push_back(static_cast<uint8_t>(bit));
                child.k = nd.k * 2 + bit;
                child.base = bit ? nd.base + Rational(nd.slope + 1) * unit : nd.base;
                child.slope = s2;
                if (node_range(child, static_cast<unsigned>(depth)).contains(y)) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) throw DomainError("spine inversion lost the target level");
        if (frontier.size() > 64) throw ResourceError("spine inversion frontier exceeded 64 branches");

        // exact detection runs on the rightmost cluster of adjacent branches;
        // a verified candidate is accepted only when nothing can lie to its
        // right (its branch touches the cluster's upper hull)
        const std::size_t cb = rightmost_cluster_begin(frontier);
        if (depth >= 24) {
            BinaryWord digits = common_prefix(frontier, cb, frontier.size());
            if (digits.size() >= 24) {
                if (auto exact = detect_exact(digits, y)) {
                    Rational cluster_hi = dyadic_to_rational(frontier.back().word.left_endpoint()) + unit;
                    if (*exact + unit + unit >= cluster_hi) {
                        out.exact = exact;
                        out.enclosure = RatInterval(*exact, *exact);
                        out.prefix = std::move(digits);
                        out.prefix_walk_ok = true;
                        out.level_enclosure = RatInterval(y, y);
                        return out;
                    }
                }
            }
        }

        // x-hull and level hull over all surviving branches
        Rational xlo = dyadic_to_rational(frontier.front().word.left_endpoint());
        Rational xhi = dyadic_to_rational(frontier.back().word.left_endpoint()) + unit;
        RatInterval level = node_range(frontier.front(), static_cast<unsigned>(depth));
        for (std::size_t i = 1; i < frontier.size(); ++i)
            level = interval_hull(level, node_range(frontier[i], static_cast<unsigned>(depth)));

        if (depth >= min_depth && xhi - xlo <= tol && level.width() <= tol) {
            BinaryWord prefix = common_prefix(frontier, 0, frontier.size());
            if (prefix.size() >= min_depth) {
                out.enclosure = RatInterval(xlo, xhi);
                out.prefix = std::move(prefix);
                out.prefix_walk_ok = true;  // every surviving branch kept D_j >= 1
                out.level_enclosure = level;
                return out;
            }
        }
    }
    throw ResourceError("spine inversion exceeded the depth cap");
}

std::vector<SpinePoint> batch_spine_invert_serial(const std::vector<Rational>& ys,
                                                  unsigned precision_bits) {
    std::vector<SpinePoint> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = spine_invert(ys[i], precision_bits);
    return out;
}

std::vector<SpinePoint> batch_spine_invert(const std::vector<Rational>& ys, unsigned precision_bits) {
    std::vector<SpinePoint> out(ys.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = spine_invert(ys[i], precision_bits);
    return out;
}

std::pair<SpinePoint, SpinePoint> hump_level_points(const Hump& h, const Rational& y,
                                                    unsigned precision_bits) {
    if (!h.leading) throw StructureError("hump_level_points requires a leading hump");
    if (!h.Jt.contains(y)) throw DomainError("level does not meet the truncated hump");
    const unsigned m2 = 2 * h.order;
    Rational scale = pow2_inv(m2);
    Rational x0 = dyadic_to_rational(h.x0);
    Rational y_local = (y - h.Jt.lo) * Rational(pow2(m2));

    SpinePoint xi = spine_invert(y_local, precision_bits + m2);

    SpinePoint left;
    left.enclosure = interval_scale_shift(xi.enclosure, scale, x0);
    if (xi.exact) left.exact = x0 + scale * *xi.exact;
    left.prefix = h.word.concat(xi.prefix);
    left.prefix_walk_ok = xi.prefix_walk_ok;
    left.level_enclosure = interval_scale_shift(xi.level_enclosure, scale, h.Jt.lo);

    SpinePoint right;
    Rational rlo = x0 + scale * (Rational(1) - xi.enclosure.hi);
    Rational rhi = x0 + scale * (Rational(1) - xi.enclosure.lo);
    right.enclosure = RatInterval(rlo, rhi);
    if (xi.exact) right.exact = x0 + scale * (Rational(1) - *xi.exact);
    right.prefix = h.word.concat(xi.prefix.complemented());
    right.prefix_walk_ok = xi.prefix_walk_ok;
    right.level_enclosure = left.level_enclosure;

    return {std::move(left), std::move(right)};
}

bool is_hump_range_right_endpoint(const Rational& y, unsigned max_order) {
    if (y.sign() <= 0 || y > Rational(2, 3)) return false;
    // y = T(x0) + (2/3) 4^-m forces the odd part of y's denominator to be 3
    mpz_class den = y.den();
    std::size_t two_adic = (den == 1) ? 0 : mpz_scan1(den.get_mpz_t(), 0);
    if ((den >> two_adic) != 3) return false;

    for (unsigned m = 0; m <= max_order; ++m) {
        Rational c = y - Rational(2, 3) * pow2_inv(2 * m);
        if (c.sign() < 0) continue;
        if (!c.is_dyadic()) continue;
        // search a balanced word of order m with T(x0) = c, pruning branches
        // whose range enclosure leaves c
        const std::size_t n = 2 * m;
        if (m == 0) {
            if (c.sign() == 0) return true;
            continue;
        }
        bool found = false;
        auto rec = [&](auto&& self, std::size_t j, const Rational& base, long s) -> void {
            if (found) return;
            if (j == n) {
                if (s == 0 && base == c) found = true;
                return;
            }
            std::size_t left = n - j - 1;
            Rational unit = pow2_inv(static_cast<unsigned>(j + 1));
            for (int bit = 0; bit <= 1; ++bit) {
                long s2 = s + (bit ? -1 : +1);
                if (std::abs(s2) > static_cast<long>(left)) continue;
                Rational b2 = bit ? base + Rational(s + 1) * unit : base;
                Rational lo = b2 + Rational(std::min(s2, 0L)) * unit;
                Rational hi = b2 + (Rational(std::max(s2, 0L)) + Rational(2, 3)) * unit;
                if (c < lo || c > hi) continue;
                self(self, j + 1, b2, s2);
                if (found) return;
            }
        };
        rec(rec, 0, Rational(0), 0);
        if (found) return true;
    }
    return false;
}

}  // namespace takagi
