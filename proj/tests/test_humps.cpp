#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "takagi/humps.hpp"

using namespace takagi;

namespace {
BinaryWord W(const char* s) { return BinaryWord::parse(s); }

Rational rep(const SpinePoint& p) { return p.exact ? *p.exact : p.enclosure.lo; }
}

TEST_CASE("hump geometry from a balanced word") {
    Hump h = hump(W("01"));
    CHECK(dyadic_to_rational(h.x0) == Rational(1, 4));
    CHECK(h.I == RatInterval(Rational(1, 4), Rational(1, 2)));
    CHECK(h.J == RatInterval(Rational(1, 2), Rational(2, 3)));
    CHECK(h.Jt == RatInterval(Rational(1, 2), Rational(5, 8)));
    CHECK(h.leading);
    CHECK(h.order == 1);

    h = hump(W("0011"));
    CHECK(dyadic_to_rational(h.x0) == Rational(3, 16));
    CHECK(h.Jt == RatInterval(Rational(1, 2), Rational(17, 32)));
    CHECK(h.leading);
    CHECK(h.generation == 1);

    h = hump(BinaryWord{});
    CHECK(h.I == RatInterval(Rational(0), Rational(1)));
    CHECK(h.J == RatInterval(Rational(0), Rational(2, 3)));
    CHECK(h.Jt == RatInterval(Rational(0), Rational(1, 2)));

    h = hump(W("1100"));
    CHECK_FALSE(h.leading);

    CHECK_THROWS_AS(hump(W("011")), StructureError);
    CHECK_THROWS_AS(hump(W("0110" "1")), StructureError);

    SUBCASE("interval lengths, exact for every balanced word of order <= 6") {
        for (const BinaryWord& w : enumerate_balanced(6)) {
            Hump hh = hump(w);
            unsigned m = hh.order;
            CHECK(hh.I.width() == pow2_inv(2 * m));
            CHECK(hh.J.width() == Rational(2, 3) * pow2_inv(2 * m));
            CHECK(hh.Jt.width() == Rational(1, 2) * pow2_inv(2 * m));
            CHECK(hh.J.lo == oracle::takagi_finite(dyadic_to_rational(hh.x0)));
        }
    }
}

TEST_CASE("composition of leading humps") {
    Hump h = compose(W("01"), W("01"));
    CHECK(h.word.str() == "0101");
    CHECK(dyadic_to_rational(h.x0) == Rational(5, 16));
    CHECK(h.J.lo == Rational(5, 8));

    h = compose(W("0011"), W("01"));
    CHECK(h.word.str() == "001101");
    CHECK(dyadic_to_rational(h.x0) == Rational(13, 64));
    CHECK(h.J.lo == Rational(17, 32));

    CHECK(compose(BinaryWord{}, W("0011")).word == W("0011"));
    CHECK_THROWS_AS(compose(W("10"), W("01")), StructureError);
    CHECK_THROWS_AS(compose(W("01"), W("1100")), StructureError);

    SUBCASE("nesting and leading closure, exhaustive to total order 6") {
        std::vector<BinaryWord> leads = enumerate_leading(6);
        for (const BinaryWord& a : leads) {
            for (const BinaryWord& b : leads) {
                if (a.size() + b.size() > 12 || (a.empty() && b.empty())) continue;
                Hump ha = hump(a);
                Hump hc = compose(a, b);
                CHECK(hc.leading);
                CHECK(ha.I.contains(hc.I));
                CHECK(hump(a).J.contains(hc.Jt));
                CHECK(hc.J.lo == ha.J.lo + pow2_inv(2 * ha.order) * hump(b).J.lo);
            }
        }
    }
}

TEST_CASE("staircase humps tile the range") {
    CHECK(staircase(0).Jt == RatInterval(Rational(0), Rational(1, 2)));
    CHECK(dyadic_to_rational(staircase(1).x0) == Rational(1, 4));
    CHECK(staircase(1).Jt == RatInterval(Rational(1, 2), Rational(5, 8)));
    CHECK(dyadic_to_rational(staircase(3).x0) == Rational(21, 64));
    CHECK(staircase(3).J.lo == Rational(21, 32));

    SUBCASE("closed form and abutment for n <= 10") {
        for (unsigned n = 0; n <= 10; ++n) {
            Hump s = staircase(n);
            CHECK(s.Jt.lo == Rational(2, 3) * (Rational(1) - pow2_inv(2 * n)));
            CHECK(s.Jt.hi == Rational(2, 3) * (Rational(1) - pow2_inv(2 * (n + 1))));
            if (n > 0) CHECK(staircase(n - 1).Jt.hi == s.Jt.lo);
        }
    }

    SUBCASE("every level below 2/3 lands in the predicted rung") {
        oracle::Rng rng(67);
        for (int i = 0; i < 1000; ++i) {
            Rational y = rng.rational(100'000) * Rational(2, 3);  // in [0, 2/3)
            unsigned n = 0;
            while (!(staircase(n).Jt.lo <= y && y <= staircase(n).Jt.hi)) {
                ++n;
                REQUIRE(n < 64);
            }
            // n is within the log4 bound: 4^n <= (2/3) / (2/3 - y) < 4^(n+1) up to closure
            Rational gap = Rational(2, 3) - y;
            CHECK(Rational(2, 3) <= Rational(mpz_class(pow2(2 * (n + 1)))) * gap);
        }
    }
}

TEST_CASE("truncated-interval hits") {
    auto words_of = [](const std::vector<Hump>& hs) {
        std::vector<std::string> out;
        for (const auto& h : hs) out.push_back(h.word.str());
        return out;
    };

    CHECK(words_of(hits_truncated(Rational(8, 15), 3)) == std::vector<std::string>{"01", "001101"});
    CHECK(words_of(hits_truncated(Rational(1, 2), 2)) == std::vector<std::string>{"", "01", "0011"});
    CHECK(hits_truncated(Rational(2, 3), 6).empty());

    SUBCASE("half-open policy drops right-endpoint hits") {
        CHECK(words_of(hits_truncated(Rational(1, 2), 2, true, Boundary::HalfOpenRight)) ==
              std::vector<std::string>{"01", "0011"});
        // 5/8 is the right endpoint of Jt(01) and the left endpoint of Jt(0101)
        CHECK(words_of(hits_truncated(Rational(5, 8), 2, true, Boundary::Closed)) ==
              std::vector<std::string>{"01", "0101"});
        CHECK(words_of(hits_truncated(Rational(5, 8), 2, true, Boundary::HalfOpenRight)) ==
              std::vector<std::string>{"0101"});
    }

    SUBCASE("matches a direct scan over balanced words") {
        oracle::Rng rng(71);
        for (int i = 0; i < 40; ++i) {
            Rational y = rng.rational(997) * Rational(2, 3);
            for (bool leading : {true, false}) {
                auto got = hits_truncated(y, 4, leading);
                std::vector<std::string> expect;
                for (unsigned m = 0; m <= 4; ++m) {
                    for (const auto& bits : oracle::balanced_words_brute(m)) {
                        BinaryWord w{bits};
                        WordClass c = classify_word(w);
                        if (leading && !c.leading) continue;
                        Rational t0 = oracle::takagi_finite(dyadic_to_rational(w.left_endpoint()));
                        if (t0 <= y && y <= t0 + Rational(1, 2) * pow2_inv(2 * m)) expect.push_back(w.str());
                    }
                }
                auto got_w = words_of(got);
                std::sort(got_w.begin(), got_w.end());
                std::sort(expect.begin(), expect.end());
                CHECK(got_w == expect);
            }
        }
    }
}

TEST_CASE("spine inversion") {
    SUBCASE("exact spot values") {
        CHECK(*spine_invert(Rational(1, 2), 48).exact == Rational(1, 6));
        CHECK(*spine_invert(Rational(1, 4), 48).exact == Rational(1, 16));
        CHECK(*spine_invert(Rational(3, 8), 48).exact == Rational(1, 8));
        CHECK(*spine_invert(Rational(0), 48).exact == Rational(0));
        CHECK_THROWS_AS(spine_invert(Rational(3, 4), 48), DomainError);
        CHECK_THROWS_AS(spine_invert(Rational(-1, 8), 48), DomainError);
    }

    SUBCASE("enclosures pin the point and the level") {
        oracle::Rng rng(73);
        for (int i = 0; i < 25; ++i) {
            Rational y = rng.rational(9973) * Rational(1, 2);
            SpinePoint p = spine_invert(y, 48);
            CHECK(p.enclosure.width() <= pow2_inv(48));
            CHECK(p.level_enclosure.width() <= pow2_inv(48));
            CHECK(p.level_enclosure.contains(y));
            CHECK(p.prefix_walk_ok);
            if (p.exact) {
                CHECK(takagi_rational(*p.exact) == y);
                CHECK(walk_at_least(PeriodicReal::from_rational(*p.exact), 1));
            } else {
                REQUIRE(p.prefix.size() >= 64);
                Walk w = walk_of(p.prefix);
                CHECK(w.min() >= 1);
            }
        }
    }

    SUBCASE("strictly monotone on sorted levels") {
        oracle::Rng rng(79);
        std::vector<Rational> ys;
        for (int i = 0; i < 100; ++i) ys.push_back(rng.rational(99991) * Rational(1, 2));
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        std::vector<SpinePoint> ps = batch_spine_invert(ys, 48);
        for (std::size_t i = 1; i < ps.size(); ++i) CHECK(rep(ps[i - 1]) < rep(ps[i]));
    }

    SUBCASE("parallel batch equals the serial reference") {
        std::vector<Rational> ys;
        for (int i = 0; i <= 16; ++i) ys.push_back(Rational(i, 33));
        auto a = batch_spine_invert(ys, 40);
        auto b = batch_spine_invert_serial(ys, 40);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].enclosure == b[i].enclosure);
            CHECK(a[i].exact == b[i].exact);
        }
    }
}

TEST_CASE("two-point intersection with a truncated hump") {
    SUBCASE("interior level") {
        auto [left, right] = hump_level_points(hump(W("01")), Rational(9, 16));
        REQUIRE(left.exact);
        REQUIRE(right.exact);
        CHECK(*left.exact == Rational(17, 64));
        CHECK(*right.exact == Rational(31, 64));
        CHECK(takagi_rational(Rational(17, 64)) == Rational(9, 16));
        CHECK(takagi_rational(Rational(31, 64)) == Rational(9, 16));
        // the left point is its own nonnegative-walk representative
        PeriodicReal z = PeriodicReal::from_rational(*left.exact);
        CHECK(reflect_nonneg(z) == z);
        CHECK_FALSE(periodic_walk(z).infinite_zeros);
    }
    SUBCASE("root hump") {
        auto [left, right] = hump_level_points(hump(BinaryWord{}), Rational(1, 2));
        CHECK(*left.exact == Rational(1, 6));
        CHECK(*right.exact == Rational(5, 6));
    }
    SUBCASE("boundary level hits the base corners") {
        auto [left, right] = hump_level_points(hump(W("01")), Rational(1, 2));
        CHECK(*left.exact == Rational(1, 4));
        CHECK(*right.exact == Rational(1, 2));
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(hump_level_points(hump(W("01")), Rational(2, 3)), DomainError);
        CHECK_THROWS_AS(hump_level_points(hump(W("1100")), Rational(1, 2)), StructureError);
    }
}

TEST_CASE("right endpoints of the full height intervals") {
    CHECK(is_hump_range_right_endpoint(Rational(2, 3), 0));
    CHECK(is_hump_range_right_endpoint(Rational(2, 3), 5));
    CHECK_FALSE(is_hump_range_right_endpoint(Rational(8, 15), 20));
    CHECK_FALSE(is_hump_range_right_endpoint(Rational(1, 2), 12));
    CHECK_FALSE(is_hump_range_right_endpoint(Rational(0), 6));

    // 13/24 = T(3/16) + (2/3)/16 needs an order-2 witness
    CHECK(is_hump_range_right_endpoint(Rational(13, 24), 2));
    CHECK_FALSE(is_hump_range_right_endpoint(Rational(13, 24), 1));

    SUBCASE("agrees with a scan over balanced words") {
        std::vector<Rational> endpoints;
        for (const BinaryWord& w : enumerate_balanced(3)) {
            Hump h = hump(w);
            endpoints.push_back(h.J.hi);
        }
        for (const Rational& y : endpoints) CHECK(is_hump_range_right_endpoint(y, 3));
    }
}

TEST_CASE("truncated-interval mass identity across code paths") {
    // enumerated interval widths vs Catalan closed form, orders <= 8
    std::vector<std::size_t> counts = count_leading_per_order(8);
    Rational closed(0);
    for (unsigned m = 0; m <= 8; ++m)
        closed += Rational(static_cast<long>(counts[m])) * Rational(1, 2) * pow2_inv(2 * m);
    Rational enumerated(0);
    for (const BinaryWord& w : enumerate_leading(8)) enumerated += hump(w).Jt.width();
    CHECK(closed == enumerated);
}
