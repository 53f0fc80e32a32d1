#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sst/family.hpp"

using namespace sst;

TEST_CASE("order families") {
    auto c4 = builtin_group("C4");

    CHECK(order_family(c4, 0).empty());
    CHECK(order_family(c4, 3).members() == std::set<std::string>{"C1", "C2"});
    CHECK(order_family(c4, 4).members() == std::set<std::string>{"C1", "C2", "C4"});
    CHECK_THROWS_AS(order_family(c4, 5), error);
    CHECK_THROWS_AS(order_family(c4, -1), error);

    // Always subconjugacy closed.
    for (Int h = 0; h <= 4; ++h) CHECK(validate_family(order_family(c4, h)).empty());
    auto q8 = builtin_group("Q8");
    for (Int h = 0; h <= 8; ++h) CHECK(validate_family(order_family(q8, h)).empty());
}

TEST_CASE("non-containing families") {
    auto c4 = builtin_group("C4");
    auto q8 = builtin_group("Q8");

    CHECK(non_containing_family(c4, "C1").empty());
    CHECK(non_containing_family(q8, "i").members() ==
          std::set<std::string>{"1", "-1", "j", "k"});
    CHECK(validate_family(non_containing_family(q8, "i")).empty());
    CHECK(validate_family(non_containing_family(q8, "-1")).empty());

    // Cyclic case: the order family equals the non-containing family on the
    // matching stretch of bounds.
    struct Spec {
        const char* name;
        Int p, n;
    };
    for (Spec s : {Spec{"C2", 2, 1}, Spec{"C4", 2, 2}, Spec{"C8", 2, 3}, Spec{"C3", 3, 1},
                   Spec{"C9", 3, 2}}) {
        auto g = builtin_group(s.name);
        Int pk = 1;
        for (Int k = 1; k <= s.n; ++k) {
            Int pk_prev = pk;
            pk *= s.p;
            Family not_containing = non_containing_family(g, "C" + std::to_string(pk));
            for (Int ell = pk_prev; ell <= pk - 1; ++ell)
                CHECK(order_family(g, ell) == not_containing);
        }
    }
}

TEST_CASE("family_from_members enforces closure") {
    auto q8 = builtin_group("Q8");
    auto c4 = builtin_group("C4");

    Family fi = family_from_members(q8, {"1", "-1", "i"});
    CHECK(fi.members().size() == 3);

    CHECK_THROWS_AS(family_from_members(c4, {"C2"}), error);
    CHECK(family_from_members(c4, {"C1", "C2", "C4"}).members().size() == 3);

    try {
        family_from_members(c4, {"C2"});
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("C1") != std::string::npos); // witness pair
    }
}

TEST_CASE("family difference and fiber support") {
    auto c4 = builtin_group("C4");
    Family empty = order_family(c4, 0);
    Family f1 = order_family(c4, 1);
    Family f2 = order_family(c4, 2);
    Family all = order_family(c4, 4);

    auto d = family_difference(empty, f1);
    REQUIRE(d.size() == 1);
    CHECK(d[0].id == "C1");

    auto d2 = family_difference(f1, f2);
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].id == "C2");

    CHECK(family_difference(f2, f2).empty());
    CHECK_THROWS_AS(family_difference(f2, f1), error);

    CHECK(fiber_support(empty, all).size() == 3);
    CHECK(fiber_support(f1, f2) == family_difference(f1, f2));
}

TEST_CASE("stratification intercept") {
    auto c2_table = builtin_table("C2");
    auto c2 = c2_table->group();
    VirtualRep zero = VirtualRep::zero(c2_table);
    VirtualRep sigma = VirtualRep::single(c2_table, "sigma");

    auto both = order_family(c2, 2).classes();
    CHECK(stratification_intercept(zero, both) == 0);
    CHECK(stratification_intercept(sigma, both) == 0);
    CHECK(stratification_intercept(sigma * -1, both) == 1);
    CHECK_THROWS_AS(stratification_intercept(zero, {}), error);

    // max over a union is the max of the maxes.
    auto c8_table = builtin_table("C8");
    auto c8 = c8_table->group();
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        std::map<std::string, Int> m;
        for (const auto& w : c8_table->irreducibles()) m[w.id] = Int(rng() % 7) - 3;
        VirtualRep v(c8_table, m);
        auto s1 = order_family(c8, 2).classes();
        auto s2 = subgroup_classes_of_order(*c8, 8);
        auto joined = s1;
        joined.insert(joined.end(), s2.begin(), s2.end());
        CHECK(stratification_intercept(v, joined) ==
              std::max(stratification_intercept(v, s1), stratification_intercept(v, s2)));
        CHECK(stratification_intercept(VirtualRep::zero(c8_table), joined) == 0);
    }
}

TEST_CASE("extremal orders") {
    auto q8 = builtin_group("Q8");
    auto c4 = builtin_group("C4");

    CHECK(extremal_orders(subgroup_classes_of_order(*c4, 2)) == std::pair<Int, Int>{2, 2});
    CHECK(extremal_orders(order_family(c4, 4).classes()) == std::pair<Int, Int>{1, 4});
    CHECK(extremal_orders(family_difference(order_family(q8, 1), order_family(q8, 4))) ==
          std::pair<Int, Int>{2, 4});
    CHECK_THROWS_AS(extremal_orders({}), error);
}

TEST_CASE("order family chain") {
    auto c4 = builtin_group("C4");
    auto chain = order_family_chain(c4);
    REQUIRE(chain.size() == 3);
    CHECK(chain[0].first == 1);
    CHECK(chain[1].first == 2);
    CHECK(chain[2].first == 4);
    CHECK(chain[2].second.members().size() == 3);

    auto q8 = builtin_group("Q8");
    auto qchain = order_family_chain(q8);
    REQUIRE(qchain.size() == 4);
    CHECK(qchain[0].first == 1);
    CHECK(qchain[1].first == 2);
    CHECK(qchain[2].first == 4);
    CHECK(qchain[3].first == 8);

    auto trivial = builtin_cyclic(2, 0);
    auto tchain = order_family_chain(trivial);
    REQUIRE(tchain.size() == 1);
    CHECK(tchain[0].first == 1);

    // For cyclic p-groups the chain collapses onto the non-containing
    // families, with the full family last.
    struct Spec {
        const char* name;
        Int p, n;
    };
    for (Spec s : {Spec{"C4", 2, 2}, Spec{"C8", 2, 3}, Spec{"C9", 3, 2}}) {
        auto g = builtin_group(s.name);
        auto ch = order_family_chain(g);
        REQUIRE(Int(ch.size()) == s.n + 1);
        Int pk = 1;
        for (Int k = 0; k < s.n; ++k) {
            pk *= s.p;
            CHECK(ch[size_t(k)].second == non_containing_family(g, "C" + std::to_string(pk)));
        }
        CHECK(ch.back().second.members().size() == g->classes().size());
    }
}
