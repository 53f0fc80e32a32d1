#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sst/geometry.hpp"

using namespace sst;

namespace {

VirtualRep random_rep(std::mt19937_64& rng, const TablePtr& table, Int lo = -3, Int hi = 3) {
    std::uniform_int_distribution<Int> dist(lo, hi);
    std::map<std::string, Int> m;
    for (const auto& w : table->irreducibles()) m[w.id] = dist(rng);
    return VirtualRep(table, m);
}

} // namespace

TEST_CASE("isomorphism lines") {
    auto c2 = builtin_table("C2");
    auto c4 = builtin_table("C4");

    CHECK(isomorphism_line(c2->group()->class_by_id("C2"), VirtualRep::zero(c2)) == Line{1, 0});
    CHECK(isomorphism_line(c4->group()->class_by_id("C2"), VirtualRep::single(c4, "lambda(1)")) ==
          Line{1, -2});
    CHECK(isomorphism_line(c4->group()->class_by_id("C4"), VirtualRep::zero(c4)) == Line{3, 0});
}

TEST_CASE("stratum lines") {
    auto c2 = builtin_table("C2");
    VirtualRep zero = VirtualRep::zero(c2);
    VirtualRep msigma = VirtualRep::single(c2, "sigma", -1);

    CHECK(stratum_line(c2->group(), 1, msigma) == Line{0, 0}); // always horizontal at 0
    CHECK(stratum_line(c2->group(), 2, zero) == Line{1, 0});
    CHECK(stratum_line(c2->group(), 2, msigma) == Line{1, 1});
    CHECK_THROWS_AS(stratum_line(c2->group(), 0, zero), error);

    // h = 1 gives s = 0 regardless of V.
    auto c8 = builtin_table("C8");
    std::mt19937_64 rng(2);
    for (int i = 0; i < 40; ++i)
        CHECK(stratum_line(c8->group(), 1, random_rep(rng, c8)) == Line{0, 0});
}

TEST_CASE("comparison regions") {
    auto c2t = builtin_table("C2");
    auto c4t = builtin_table("C4");
    auto c2 = c2t->group();
    auto c4 = c4t->group();

    Region r1 = comparison_region(order_family(c2, 0), order_family(c2, 2), VirtualRep::zero(c2t));
    CHECK(contains(r1, 3, 3));
    CHECK(contains(r1, 3, 4));
    CHECK_FALSE(contains(r1, 3, 2));
    CHECK(contains(r1, -2, 0)); // x < 0 piece: slope 0 through 0
    CHECK_FALSE(contains(r1, -2, -1));

    Region r2 = comparison_region(order_family(c4, 1), order_family(c4, 2), VirtualRep::zero(c4t));
    // Difference is just C2: same slope-1 line on both sides.
    CHECK(contains(r2, 2, 2));
    CHECK_FALSE(contains(r2, 2, 1));
    CHECK(contains(r2, -2, -2));
    CHECK_FALSE(contains(r2, -2, -3));

    Region r3 = comparison_region(order_family(c4, 0), order_family(c4, 4), VirtualRep::zero(c4t));
    CHECK(contains(r3, 2, 6));
    CHECK_FALSE(contains(r3, 2, 5));
    CHECK(contains(r3, -3, 0));
    CHECK_FALSE(contains(r3, -3, -1));

    CHECK_THROWS_AS(
        comparison_region(order_family(c4, 2), order_family(c4, 2), VirtualRep::zero(c4t)), error);
    CHECK_THROWS_AS(
        comparison_region(order_family(c4, 2), order_family(c4, 1), VirtualRep::zero(c4t)), error);
}

TEST_CASE("recovery regions") {
    auto c4t = builtin_table("C4");
    auto c4 = c4t->group();
    VirtualRep zero = VirtualRep::zero(c4t);

    Region h1 = recovery_region(c4, 1, zero);
    for (Int x = -4; x <= 4; ++x) {
        CHECK(contains(h1, x, 0));
        CHECK(contains(h1, x, 5));
        CHECK_FALSE(contains(h1, x, -1));
    }

    Region h2 = recovery_region(c4, 2, zero);
    CHECK(contains(h2, 3, 3));
    CHECK_FALSE(contains(h2, 3, 2));
    CHECK(contains(h2, -3, 0));
    CHECK_FALSE(contains(h2, -3, -1));

    Region h4 = recovery_region(c4, 4, zero);
    CHECK(contains(h4, 2, 6));
    CHECK_FALSE(contains(h4, 2, 5));
    CHECK(contains(h4, -1, 0));

    CHECK_THROWS_AS(recovery_region(c4, 0, zero), error);

    // Against the comparison theorem: recovery at h is comparison from the
    // empty family, on the x >= 0 side.
    std::mt19937_64 rng(11);
    for (const char* name : {"C2", "C4", "C8", "C3", "C9", "Q8"}) {
        auto table = builtin_table(name);
        auto g = table->group();
        for (int trial = 0; trial < 12; ++trial) {
            VirtualRep v = random_rep(rng, table);
            for (const auto& [h, fam] : order_family_chain(g)) {
                (void)fam;
                Region rec = recovery_region(g, h, v);
                Region cmp = comparison_region(order_family(g, 0), order_family(g, h), v);
                for (Int x = 0; x <= 6; ++x)
                    for (Int y = -12; y <= 12; ++y)
                        CHECK(contains(rec, x, y) == contains(cmp, x, y));
            }
        }
    }
}

TEST_CASE("positive cone") {
    auto c2t = builtin_table("C2");
    auto c2 = c2t->group();

    Region integer_cone = positive_cone(c2, VirtualRep::zero(c2t));
    CHECK(contains(integer_cone, 4, 2));
    CHECK(contains(integer_cone, 4, 4));
    CHECK(contains(integer_cone, 4, 0));
    CHECK_FALSE(contains(integer_cone, 4, 5));
    CHECK_FALSE(contains(integer_cone, 4, -1));
    CHECK_FALSE(contains(integer_cone, -1, 0));

    // V = sigma and V = -sigma both give y >= -1 and y <= x + 1.
    for (Int mult : {Int(1), Int(-1)}) {
        Region cone = positive_cone(c2, VirtualRep::single(c2t, "sigma", mult));
        for (Int x = -3; x <= 5; ++x) {
            CHECK(contains(cone, x, -1) == (x + 1 >= -1));
            CHECK_FALSE(contains(cone, x, -2));
            CHECK(contains(cone, x, x + 1) == (x + 1 >= -1));
            CHECK_FALSE(contains(cone, x, x + 2));
        }
    }

    // V = 0 special case for every built-in group.
    for (const char* name : {"C2", "C4", "C8", "C3", "C9", "Q8"}) {
        auto table = builtin_table(name);
        auto g = table->group();
        Region cone = positive_cone(g, VirtualRep::zero(table));
        Int slope = g->order() - 1;
        for (Int x = -3; x <= 6; ++x)
            for (Int y = -5; y <= 20; ++y)
                CHECK(contains(cone, x, y) == (y >= 0 && y <= slope * x));
    }
}

TEST_CASE("exact E2 comparison verdicts") {
    auto c2t = builtin_table("C2");
    const auto& c2class = c2t->group()->class_by_id("C2");
    VirtualRep zero = VirtualRep::zero(c2t);

    CHECK(e2_comparison(c2class, zero, 0, 1) == E2Verdict::iso);
    CHECK(e2_comparison(c2class, zero, 0, 0) == E2Verdict::surjection);
    CHECK(e2_comparison(c2class, zero, 1, 0) == E2Verdict::surjection);
    CHECK(e2_comparison(c2class, zero, 0, -1) == E2Verdict::no_claim);

    // Sampled property: iso strictly above the line, surjection within
    // |H| - 1 below-or-on it.
    std::mt19937_64 rng(23);
    for (const char* name : {"C2", "C4", "C8", "C3", "C9"}) {
        auto table = builtin_table(name);
        for (int trial = 0; trial < 40; ++trial) {
            VirtualRep v = random_rep(rng, table);
            for (const auto& h : table->group()->classes()) {
                Line line = isomorphism_line(h, v);
                Int t = Int(rng() % 17) - 8;
                Int s = Int(rng() % 17) - 8;
                Int x = t - s;
                E2Verdict verdict = e2_comparison(h, v, t, s);
                if (s > line.y_at(x)) CHECK(verdict == E2Verdict::iso);
                if (verdict == E2Verdict::surjection) {
                    CHECK(s <= line.y_at(x));
                    CHECK(line.y_at(x) - s <= h.order - 1);
                }
                if (verdict == E2Verdict::no_claim) CHECK(s <= line.y_at(x));
            }
        }
    }
}

TEST_CASE("strata") {
    auto slopes_of = [](const std::vector<std::pair<Int, Line>>& ss) {
        std::vector<Int> out;
        for (const auto& [h, line] : ss) {
            (void)h;
            out.push_back(line.slope);
        }
        return out;
    };

    CHECK(slopes_of(strata(builtin_group("C4"), VirtualRep::zero(builtin_table("C4")))) ==
          std::vector<Int>{0, 1, 3});
    CHECK(slopes_of(strata(builtin_group("C9"), VirtualRep::zero(builtin_table("C9")))) ==
          std::vector<Int>{0, 2, 8});
    CHECK(slopes_of(strata(builtin_group("Q8"), VirtualRep::zero(builtin_table("Q8")))) ==
          std::vector<Int>{0, 1, 3, 7});

    // Lines through the origin for V = 0; slopes strictly increase.
    auto ss = strata(builtin_group("C8"), VirtualRep::zero(builtin_table("C8")));
    for (size_t i = 0; i < ss.size(); ++i) {
        CHECK(ss[i].second.intercept == 0);
        if (i > 0) CHECK(ss[i].second.slope > ss[i - 1].second.slope);
    }
}

TEST_CASE("vanishing bounds per column") {
    auto c2t = builtin_table("C2");
    auto c4t = builtin_table("C4");

    ColumnBounds tip = vanishing_bounds(c2t->group(), VirtualRep::zero(c2t), 0);
    CHECK(tip.y_min == 0);
    CHECK(tip.y_max == 0);
    CHECK_FALSE(tip.empty());

    ColumnBounds col2 = vanishing_bounds(c2t->group(), VirtualRep::zero(c2t), 2);
    CHECK(col2.y_min == 0);
    CHECK(col2.y_max == 2);

    ColumnBounds col1 = vanishing_bounds(c4t->group(), VirtualRep::zero(c4t), 1);
    CHECK(col1.y_min == 0);
    CHECK(col1.y_max == 3);

    // Negative columns go empty rather than being clamped.
    ColumnBounds neg = vanishing_bounds(c2t->group(), VirtualRep::zero(c2t), -1);
    CHECK(neg.empty());

    // Bounds agree with cone membership.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        VirtualRep v = random_rep(rng, c4t);
        Region cone = positive_cone(c4t->group(), v);
        for (Int x = -3; x <= 4; ++x) {
            ColumnBounds b = vanishing_bounds(c4t->group(), v, x);
            for (Int y = -15; y <= 15; ++y)
                CHECK(contains(cone, x, y) == (!b.empty() && y >= b.y_min && y <= b.y_max));
        }
    }
}

TEST_CASE("comparison region is antitone in the difference set") {
    auto c8t = builtin_table("C8");
    auto c8 = c8t->group();
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        VirtualRep v = random_rep(rng, c8t);
        Region small = comparison_region(order_family(c8, 1), order_family(c8, 2), v);
        Region large = comparison_region(order_family(c8, 0), order_family(c8, 8), v);
        for (Int x = 0; x <= 6; ++x)
            for (Int y = -12; y <= 20; ++y)
                if (contains(large, x, y)) CHECK(contains(small, x, y));
    }
}
