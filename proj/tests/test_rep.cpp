#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sst/rep.hpp"

using namespace sst;

TEST_CASE("builtin cyclic tables have the expected irreducibles") {
    auto c2 = builtin_cyclic_table(2, 1);
    CHECK(c2->irreducibles().size() == 2);
    CHECK(c2->has_irreducible("1"));
    CHECK(c2->has_irreducible("sigma"));
    REQUIRE(c2->aliases().count("lambda0"));
    CHECK(c2->aliases().at("lambda0").at("sigma") == 2);

    auto c4 = builtin_cyclic_table(2, 2);
    CHECK(c4->irreducibles().size() == 3);
    CHECK(c4->has_irreducible("lambda(1)"));
    CHECK(c4->aliases().at("lambda1").count("lambda(1)"));
    CHECK(c4->aliases().at("lambda0").count("sigma"));

    auto c3 = builtin_cyclic_table(3, 1);
    CHECK(c3->irreducibles().size() == 2);
    CHECK(c3->has_irreducible("lambda(1)"));
    CHECK_FALSE(c3->has_irreducible("sigma"));

    auto trivial = builtin_cyclic_table(2, 0);
    CHECK(trivial->irreducibles().size() == 1);

    for (const char* name : {"C2", "C4", "C8", "C3", "C9", "Q8"})
        CHECK(validate_table(*builtin_table(name)).empty());
}

TEST_CASE("total_dim and fixed_dim basics") {
    auto c4 = builtin_table("C4");
    auto c2 = builtin_table("C2");

    CHECK(total_dim(VirtualRep::zero(c4)) == 0);
    CHECK(total_dim(VirtualRep::single(c4, "lambda(1)")) == 2);
    CHECK(total_dim(VirtualRep::single(c2, "sigma", -1)) == -1);

    VirtualRep sigma = VirtualRep::single(c2, "sigma");
    CHECK(fixed_dim(sigma, "C2") == 0);
    CHECK(fixed_dim(sigma, "C1") == 1);

    VirtualRep lambda1 = parse_virtual_rep(c4, "lambda1:1");
    CHECK(lambda1 == VirtualRep::single(c4, "lambda(1)"));
    CHECK(fixed_dim(lambda1, "C2") == 0);

    CHECK_THROWS_AS(fixed_dim(sigma, "C8"), error);
}

TEST_CASE("regular representation") {
    auto c2 = builtin_table("C2");
    VirtualRep rho2 = regular_rep(c2);
    CHECK(rho2.mult_of("1") == 1);
    CHECK(rho2.mult_of("sigma") == 1);
    CHECK(total_dim(rho2) == 2);

    auto c4 = builtin_table("C4");
    VirtualRep rho4 = regular_rep(c4);
    CHECK(rho4.mult_of("1") == 1);
    CHECK(rho4.mult_of("sigma") == 1);
    CHECK(rho4.mult_of("lambda(1)") == 1);
    CHECK(total_dim(rho4) == 4);

    CHECK(total_dim(regular_rep(builtin_cyclic_table(2, 0))) == 1);

    // Fixed points of the regular representation count cosets.
    for (const char* name : {"C2", "C4", "C8", "C3", "C9", "Q8"}) {
        auto table = builtin_table(name);
        VirtualRep rho = regular_rep(table);
        CHECK(total_dim(rho) == table->group()->order());
        for (const auto& c : table->group()->classes())
            CHECK(fixed_dim(rho, c) == table->group()->order() / c.order);
    }
}

TEST_CASE("rho_padding") {
    auto c2 = builtin_table("C2");
    auto c4 = builtin_table("C4");

    CHECK(rho_padding(VirtualRep::zero(c2)) == 0);
    CHECK(rho_padding(VirtualRep::single(c2, "sigma", 3)) == 0);
    CHECK(rho_padding(VirtualRep::single(c2, "sigma", -1)) == 1);
    CHECK(rho_padding(VirtualRep::single(c4, "lambda(1)", -3)) == 3);

    // k(V) * rho + V is actual, and the padding of the result is zero.
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::string, Int> mult;
        for (const auto& w : c4->irreducibles()) mult[w.id] = Int(rng() % 9) - 4;
        VirtualRep v(c4, mult);
        Int k = rho_padding(v);
        VirtualRep padded = v + regular_rep(c4) * k;
        for (const auto& [id, m] : padded.mult()) {
            (void)id;
            CHECK(m >= 0);
        }
        CHECK(rho_padding(padded) == 0);
        if (k > 0) {
            VirtualRep under = v + regular_rep(c4) * (k - 1);
            bool still_virtual = false;
            for (const auto& [id, m] : under.mult()) {
                (void)id;
                if (m < 0) still_virtual = true;
            }
            CHECK(still_virtual);
        }
    }
}

TEST_CASE("additivity of total_dim and fixed_dim") {
    auto c8 = builtin_table("C8");
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::string, Int> m1, m2;
        for (const auto& w : c8->irreducibles()) {
            m1[w.id] = Int(rng() % 7) - 3;
            m2[w.id] = Int(rng() % 7) - 3;
        }
        VirtualRep a(c8, m1), b(c8, m2);
        CHECK(total_dim(a + b) == total_dim(a) + total_dim(b));
        for (const auto& c : c8->group()->classes())
            CHECK(fixed_dim(a + b, c) == fixed_dim(a, c) + fixed_dim(b, c));
        CHECK(fixed_dim(a, "C1") == total_dim(a));
    }
}

TEST_CASE("builtin tables match the character-averaging oracle") {
    struct Spec {
        const char* name;
        Int p, n;
    };
    for (Spec s : {Spec{"C2", 2, 1}, Spec{"C4", 2, 2}, Spec{"C8", 2, 3}, Spec{"C3", 3, 1},
                   Spec{"C9", 3, 2}}) {
        auto table = builtin_cyclic_table(s.p, s.n);
        for (const auto& w : table->irreducibles())
            for (const auto& c : table->group()->classes())
                CHECK(w.fixed_dim.at(c.id) == oracle::cyclic_fixed_dim(s.p, s.n, w.id, c.order));
    }

    auto q8 = builtin_quaternion8_table();
    for (const auto& w : q8->irreducibles())
        for (const auto& c : q8->group()->classes())
            CHECK(w.fixed_dim.at(c.id) == oracle::quaternion_fixed_dim(w.id, c.id));
}

TEST_CASE("virtual rep expression parsing") {
    auto c4 = builtin_table("C4");
    CHECK(parse_virtual_rep(c4, "0").is_zero());
    CHECK(parse_virtual_rep(c4, "").is_zero());
    CHECK(parse_virtual_rep(c4, "sigma:1,lambda1:-2") ==
          VirtualRep(c4, {{"sigma", 1}, {"lambda(1)", -2}}));
    CHECK(parse_virtual_rep(c4, "lambda0:1") == VirtualRep::single(c4, "sigma", 2));
    CHECK(parse_virtual_rep(c4, "sigma") == VirtualRep::single(c4, "sigma"));
    CHECK(parse_virtual_rep(c4, "sigma:2,sigma:-2").is_zero());
    CHECK_THROWS_AS(parse_virtual_rep(c4, "nope:1"), error);
    CHECK_THROWS_AS(parse_virtual_rep(c4, "sigma:x"), error);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, Int> m;
        for (const auto& w : c4->irreducibles()) m[w.id] = Int(rng() % 9) - 4;
        VirtualRep v(c4, m);
        CHECK(parse_virtual_rep(c4, format_virtual_rep(v)) == v);
    }
}
