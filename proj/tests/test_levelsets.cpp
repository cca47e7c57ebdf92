#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "takagi/levelsets.hpp"

using namespace takagi;

namespace {
BinaryWord W(const char* s) { return BinaryWord::parse(s); }

bool has_point(const std::vector<Rational>& v, const Rational& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}
}

TEST_CASE("level-set solve") {
    SUBCASE("the zero level is exactly {0, 1}") {
        LevelSetReport rep = solve(Rational(0), 20);
        CHECK(rep.exact_points == std::vector<Rational>{Rational(0), Rational(1)});
        CHECK(rep.contains(Rational(0)));
        CHECK(rep.contains(Rational(1)));
        CHECK(rep.complete_cover);
        CHECK_FALSE(rep.truncated);
    }

    SUBCASE("level 1/2 at depth 8: known points certified and covered") {
        LevelSetReport rep = solve(Rational(1, 2), 8);
        for (long p : {3, 4}) CHECK(has_point(rep.exact_points, Rational(p, 16)));
        CHECK(has_point(rep.exact_points, Rational(1, 2)));
        CHECK(has_point(rep.exact_points, Rational(13, 16)));
        CHECK(has_point(rep.exact_points, Rational(1, 6)));
        CHECK(has_point(rep.exact_points, Rational(5, 6)));
        for (const Rational& p : rep.exact_points) CHECK(member(p, Rational(1, 2)));
        for (long num : {1, 3, 4, 8, 13}) {
            // {1/6, 3/16, 1/4, 1/2, 13/16, 5/6} all covered
            (void)num;
        }
        CHECK(rep.contains(Rational(1, 6)));
        CHECK(rep.contains(Rational(3, 16)));
        CHECK(rep.contains(Rational(1, 4)));
        CHECK(rep.contains(Rational(1, 2)));
        CHECK(rep.contains(Rational(13, 16)));
        CHECK(rep.contains(Rational(5, 6)));
    }

    SUBCASE("level 2/3 has no exact dyadic points and a branching frontier") {
        LevelSetReport rep = solve(Rational(2, 3), 12);
        CHECK(rep.exact_points.empty());
        CHECK(rep.contains(Rational(1, 3)));
        CHECK(rep.contains(Rational(2, 3)));
        REQUIRE(rep.growth.size() == 12);
        CHECK(rep.growth.back().second > rep.growth[5].second);
    }

    SUBCASE("bracket cap degrades to a coarser sound cover") {
        SolveOptions opts;
        opts.bracket_cap = 32;
        LevelSetReport rep = solve(Rational(2, 3), 30, opts);
        CHECK(rep.truncated);
        CHECK(rep.depth_reached < 30);
        CHECK(rep.complete_cover);
        CHECK(rep.contains(Rational(1, 3)));
    }

    SUBCASE("domain and depth guards") {
        CHECK_THROWS_AS(solve(Rational(3, 4), 10), DomainError);
        CHECK_THROWS_AS(solve(Rational(1, 2), 80), DomainError);
    }

    SUBCASE("soundness on random levels: the seed point is always covered") {
        oracle::Rng rng(83);
        for (int i = 0; i < 40; ++i) {
            Rational x = rng.rational(10'000);
            Rational y = takagi_rational(x);
            LevelSetReport rep = solve(y, 20);
            CHECK(rep.contains(x));
        }
    }

    SUBCASE("parallel refinement equals the serial reference") {
        SolveOptions ser;
        ser.parallel = false;
        LevelSetReport a = solve(Rational(2, 3), 16, ser);
        LevelSetReport b = solve(Rational(2, 3), 16);
        CHECK(a.exact_points == b.exact_points);
        REQUIRE(a.brackets.size() == b.brackets.size());
        for (std::size_t i = 0; i < a.brackets.size(); ++i) CHECK(a.brackets[i] == b.brackets[i]);
    }
}

TEST_CASE("membership is an exact equality test") {
    CHECK(member(Rational(1, 5), Rational(8, 15)));
    CHECK(member(Rational(1, 4), Rational(1, 2)));
    CHECK_FALSE(member(Rational(1, 3), Rational(1, 2)));
    CHECK_THROWS_AS(member(Rational(3, 2), Rational(0)), DomainError);
}

TEST_CASE("finite local class counting via truncated leading humps") {
    auto [c1, w1] = count_finite_locals(Rational(8, 15), 3);
    CHECK(c1 == 2);
    REQUIRE(w1.size() == 2);
    CHECK(w1[0].word == W("01"));
    CHECK(w1[1].word == W("001101"));

    auto [c2, w2] = count_finite_locals(Rational(8, 15), 2);
    CHECK(c2 == 1);

    auto [c3, w3] = count_finite_locals(Rational(49, 100), 0);
    CHECK(c3 == 1);
    CHECK(w3[0].word.empty());
}

TEST_CASE("finite local class records") {
    SUBCASE("level 9/16 under the order-1 hump") {
        auto recs = finite_local_reps(Rational(9, 16), 1);
        REQUIRE(recs.size() == 1);
        const LocalClassRecord& r = recs[0];
        CHECK(r.exact);
        CHECK(*r.left.exact == Rational(17, 64));
        CHECK(*r.right.exact == Rational(31, 64));
        CHECK(r.representative.to_rational() == Rational(17, 64));
        REQUIRE(r.size == 2);
        CHECK(r.members[0].to_rational() == Rational(17, 64));
        CHECK(r.members[1].to_rational() == Rational(33, 64));
        for (const auto& m : r.members) CHECK(member(m.to_rational(), Rational(9, 16)));
    }

    SUBCASE("level 1/2 at order 0: the root record") {
        auto recs = finite_local_reps(Rational(1, 2), 0);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].representative.to_rational() == Rational(1, 6));
        REQUIRE(recs[0].size == 2);
        CHECK(recs[0].members[0].to_rational() == Rational(1, 6));
        CHECK(recs[0].members[1].to_rational() == Rational(5, 6));
    }

    SUBCASE("level 5/8 includes the class of 5/16") {
        auto recs = finite_local_reps(Rational(5, 8), 2);
        bool found = false;
        for (const auto& r : recs) {
            if (!r.exact || r.representative.to_rational() != Rational(5, 16)) continue;
            found = true;
            std::vector<Rational> vals;
            for (const auto& m : r.members) vals.push_back(m.to_rational());
            CHECK(vals == std::vector<Rational>{Rational(5, 16), Rational(3, 8), Rational(9, 16),
                                                Rational(5, 8)});
        }
        CHECK(found);
    }

    SUBCASE("record count matches the hit count; members are disjoint across records") {
        oracle::Rng rng(89);
        int exact_classes = 0;
        for (int i = 0; i < 200; ++i) {
            Rational y = rng.rational(499) * Rational(2, 3);
            auto recs = finite_local_reps(y, 4);
            auto [count, hs] = count_finite_locals(y, 4);
            CHECK(recs.size() == count);
            std::set<std::string> seen;
            for (const auto& r : recs) {
                if (!r.exact) continue;
                ++exact_classes;
                CHECK(has_nonneg_walk(r.representative));
                for (const auto& m : r.members) {
                    CHECK(member(m.to_rational(), y));
                    CHECK(reflect_nonneg(m) == r.representative);
                    CHECK(seen.insert(m.str()).second);  // pairwise distinct across records
                }
            }
        }
        CHECK(exact_classes > 0);
    }
}

TEST_CASE("approach sequences toward Cantor-type points") {
    SUBCASE("x = 1/5: contracting certified level points") {
        PeriodicReal x = PeriodicReal::from_rational(Rational(1, 5));
        auto zs = approach_sequence(x, 3, 48);
        REQUIRE(zs.size() == 3);
        Rational target(1, 5), y(8, 15);
        Rational prev_gap(1);
        for (std::size_t k = 0; k < zs.size(); ++k) {
            // enclosed strictly to the right of 1/5, within the prefix interval
            CHECK(zs[k].enclosure.lo > target);
            Rational gap_hi = zs[k].enclosure.hi - target;
            CHECK(gap_hi <= pow2_inv(4 * (static_cast<unsigned>(k) + 1)));
            CHECK(gap_hi < prev_gap);
            prev_gap = zs[k].enclosure.lo - target;
            // certified on the level
            CHECK(zs[k].level_enclosure.contains(y));
            CHECK(zs[k].level_enclosure.width() <= pow2_inv(48));
        }
    }

    SUBCASE("rejects levels on right endpoints and finite classes") {
        CHECK_THROWS_AS(approach_sequence(PeriodicReal::from_rational(Rational(1, 3)), 3, 48),
                        DomainError);
        CHECK_THROWS_AS(approach_sequence(PeriodicReal::from_rational(Rational(5, 16)), 3, 48),
                        DomainError);
        // 9/16 = 0.1001... is not in the nonnegative-walk set
        CHECK_THROWS_AS(approach_sequence(PeriodicReal::from_rational(Rational(9, 16)), 3, 48),
                        DomainError);
    }
}

TEST_CASE("truncated-interval mass and the exact average") {
    CHECK(jt_mass(0).closed_form == Rational(1, 2));
    CHECK(jt_mass(2).closed_form == Rational(11, 16));
    CHECK(average_count_exact(0) == Rational(3, 4));
    CHECK(average_count_exact(2) == Rational(33, 32));

    SUBCASE("two code paths agree exactly and the sequence climbs toward 1") {
        Rational prev(0);
        for (unsigned M = 0; M <= 10; ++M) {
            JtMass m = jt_mass(M);
            CHECK(m.closed_form == m.enumerated);
            CHECK(m.closed_form > prev);
            CHECK(m.closed_form < Rational(1));
            CHECK(average_count_exact(M) == Rational(3, 2) * m.closed_form);
            prev = m.closed_form;
        }
    }

    SUBCASE("tail obeys the square-root band for 4 <= M <= 10") {
        for (unsigned M = 4; M <= 10; ++M) {
            Rational tail = Rational(1) - jt_mass(M).closed_form;
            // 0.4/sqrt(M) <= tail <= 1.5/sqrt(M), squared to stay rational
            CHECK(tail * tail * Rational(static_cast<long>(M)) >= Rational(4, 25));
            CHECK(tail * tail * Rational(static_cast<long>(M)) <= Rational(9, 4));
        }
    }
}

TEST_CASE("classification evidence") {
    SUBCASE("y = 0") {
        ClassificationReport rep = classify(Rational(0), 12, 5);
        CHECK(rep.exact_points_found == 2);
        for (unsigned m = 0; m <= 5; ++m) CHECK(rep.finite_local_count_at_order.at(m) == 1);
        CHECK(rep.dyadic_image_hit);
        CHECK_FALSE(rep.cantor_growth_evidence);
    }
    SUBCASE("y = 8/15: counts grow monotonically") {
        ClassificationReport rep = classify(Rational(8, 15), 12, 4);
        CHECK(rep.finite_local_count_at_order.at(2) == 1);
        CHECK(rep.finite_local_count_at_order.at(3) == 2);
        std::size_t prev = 0;
        for (auto& [m, c] : rep.finite_local_count_at_order) {
            CHECK(c >= prev);
            prev = c;
        }
    }
    SUBCASE("y = 2/3: Cantor-type growth, zero hits, right-endpoint flag") {
        ClassificationReport rep = classify(Rational(2, 3), 16, 5);
        CHECK(rep.finite_local_count_at_order.at(5) == 0);
        CHECK(rep.cantor_growth_evidence);
        CHECK(rep.right_endpoint_hit);
        CHECK_FALSE(rep.dyadic_image_hit);
        CHECK_FALSE(rep.evidence.empty());
    }
    SUBCASE("boundary flag at a shared endpoint") {
        ClassificationReport rep = classify(Rational(1, 2), 10, 3);
        CHECK(rep.boundary_hit);
    }
}
