#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sst/group.hpp"

using namespace sst;

TEST_CASE("builtin cyclic groups") {
    auto trivial = builtin_cyclic(2, 0);
    CHECK(trivial->order() == 1);
    CHECK(trivial->classes().size() == 1);
    CHECK(trivial->classes()[0].order == 1);

    auto c4 = builtin_cyclic(2, 2);
    CHECK(c4->order() == 4);
    REQUIRE(c4->classes().size() == 3);
    std::vector<Int> orders;
    for (const auto& c : c4->classes()) orders.push_back(c.order);
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<Int>{1, 2, 4});
    CHECK(c4->is_subconjugate("C1", "C2"));
    CHECK(c4->is_subconjugate("C2", "C4"));
    CHECK(c4->is_subconjugate("C1", "C4")); // closure
    CHECK_FALSE(c4->is_subconjugate("C4", "C2"));

    auto c9 = builtin_cyclic(3, 2);
    orders.clear();
    for (const auto& c : c9->classes()) orders.push_back(c.order);
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<Int>{1, 3, 9});

    CHECK_THROWS_AS(builtin_cyclic(4, 1), error);
    CHECK_THROWS_AS(builtin_cyclic(1, 1), error);
}

TEST_CASE("quaternion group lattice") {
    auto q8 = builtin_quaternion8();
    CHECK(q8->order() == 8);
    std::vector<Int> orders;
    for (const auto& c : q8->classes()) orders.push_back(c.order);
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<Int>{1, 2, 4, 4, 4, 8});

    CHECK(q8->is_subconjugate("-1", "i"));
    CHECK(q8->is_subconjugate("-1", "j"));
    CHECK(q8->is_subconjugate("-1", "k"));
    CHECK_FALSE(q8->is_subconjugate("i", "j"));
    CHECK_FALSE(q8->is_subconjugate("j", "i"));
    CHECK(q8->is_subconjugate("1", "Q8"));
    for (const auto& c : q8->classes()) CHECK(c.normal);

    CHECK(validate_group(*q8).empty());
}

TEST_CASE("validate_group diagnoses broken descriptors") {
    for (const char* name : {"C2", "C4", "C8", "C3", "C9", "Q8"})
        CHECK(validate_group(*builtin_group(name)).empty());

    // Missing trivial class.
    GroupDescriptor no_trivial("bad", 4,
                               {{"C2", 2, 1, true}, {"C4", 4, 1, true}}, {{"C2", "C4"}});
    CHECK(has_code(validate_group(no_trivial), "missing-trivial"));

    // Lagrange violation: order 3 inside order 4.
    GroupDescriptor lagrange("bad", 4,
                             {{"e", 1, 1, true}, {"X", 3, 1, true}, {"G", 4, 1, true}},
                             {{"e", "X"}, {"e", "G"}, {"X", "G"}});
    CHECK(has_code(validate_group(lagrange), "lagrange-violation"));

    // Normality flag contradicting class size.
    GroupDescriptor normality("bad", 4,
                              {{"e", 1, 1, true}, {"H", 2, 2, true}, {"G", 4, 1, true}},
                              {{"e", "H"}, {"H", "G"}, {"e", "G"}});
    CHECK(has_code(validate_group(normality), "normality-mismatch"));

    // Subconjugacy must respect orders.
    GroupDescriptor order_flip("bad", 4,
                               {{"e", 1, 1, true}, {"H", 2, 1, true}, {"G", 4, 1, true}},
                               {{"e", "H"}, {"e", "G"}, {"H", "G"}, {"G", "H"}});
    auto ds = validate_group(order_flip);
    CHECK(has_code(ds, "subconjugacy-order"));
    CHECK(has_code(ds, "subconjugacy-antisymmetry"));
}

TEST_CASE("subgroup_classes_of_order") {
    auto c4 = builtin_group("C4");
    auto q8 = builtin_group("Q8");

    auto c2 = subgroup_classes_of_order(*c4, 2);
    REQUIRE(c2.size() == 1);
    CHECK(c2[0].id == "C2");

    auto fours = subgroup_classes_of_order(*q8, 4);
    CHECK(fours.size() == 3);

    CHECK(subgroup_classes_of_order(*c4, 3).empty());

    // Nonempty result forces divisibility.
    for (Int h = 0; h <= 8; ++h)
        if (!subgroup_classes_of_order(*q8, h).empty()) CHECK(8 % h == 0);
}

TEST_CASE("cyclic shape detection") {
    Int p = 0, n = 0;
    CHECK(is_cyclic_p_group_shape(*builtin_group("C8"), &p, &n));
    CHECK(p == 2);
    CHECK(n == 3);
    CHECK(is_cyclic_p_group_shape(*builtin_group("C9"), &p, &n));
    CHECK(p == 3);
    CHECK(n == 2);
    CHECK_FALSE(is_cyclic_p_group_shape(*builtin_group("Q8")));
    CHECK(is_cyclic_p_group_shape(*builtin_cyclic(2, 0)));
}
