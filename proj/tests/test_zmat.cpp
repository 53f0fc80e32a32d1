#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sst/zmat.hpp"

using namespace sst;

namespace {

Mat random_matrix(std::mt19937_64& rng, int rows, int cols, Int lo = -3, Int hi = 3) {
    std::uniform_int_distribution<Int> dist(lo, hi);
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
    return m;
}

} // namespace

TEST_CASE("ceil_div and floor_div handle negative numerators") {
    CHECK(ceil_div(3, 2) == 2);
    CHECK(ceil_div(-3, 2) == -1);
    CHECK(ceil_div(4, 2) == 2);
    CHECK(ceil_div(-4, 2) == -2);
    CHECK(ceil_div(0, 5) == 0);
    CHECK(floor_div(3, 2) == 1);
    CHECK(floor_div(-3, 2) == -2);
    CHECK(floor_div(-4, 2) == -2);
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 300; ++trial) {
        int rows = int(rng() % 6), cols = int(rng() % 6);
        Mat a = random_matrix(rng, rows, cols);
        SmithForm s = smith_normal_form(a);

        CHECK(s.u * a * s.v == s.d);
        if (rows > 0) CHECK(s.uinv * s.u == Mat::identity(rows));
        if (rows > 0) CHECK(std::llabs(oracle::bareiss_det(s.u)) == 1);
        if (cols > 0) CHECK(std::llabs(oracle::bareiss_det(s.v)) == 1);

        // Diagonal, nonnegative, divisibility chain.
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j) CHECK(s.d.at(i, j) == 0);
        for (size_t i = 0; i + 1 < s.diag.size(); ++i) {
            CHECK(s.diag[i] >= 0);
            if (s.diag[i] == 0) CHECK(s.diag[i + 1] == 0);
            if (s.diag[i] != 0 && s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
        }

        CHECK(s.rank == oracle::bareiss_rank(a));

        // Nontrivial invariant factors must match the minors-gcd oracle.
        std::vector<Int> nontrivial;
        for (Int d : s.diag)
            if (d != 0) nontrivial.push_back(d);
        CHECK(nontrivial == oracle::invariant_factors_minors(a));
    }
}

TEST_CASE("solve finds integer solutions exactly when they exist") {
    Mat a = Mat::from_rows({{2, 0}, {0, 3}});
    auto x = solve(a, {4, 9});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solve(a, {1, 0}).has_value());
    CHECK_FALSE(solve(a, {0, 2}).has_value());

    // Underdetermined: any solution is acceptable, verify by substitution.
    Mat b = Mat::from_rows({{1, 2, 3}});
    auto y = solve(b, {6});
    REQUIRE(y.has_value());
    CHECK((*y)[0] + 2 * (*y)[1] + 3 * (*y)[2] == 6);
}

TEST_CASE("kernel basis spans the kernel") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = int(rng() % 5), cols = int(rng() % 5);
        Mat a = random_matrix(rng, rows, cols);
        Mat k = kernel_basis(a);
        CHECK((a * k).is_zero());
        CHECK(k.cols() == cols - oracle::bareiss_rank(a));
        // Columns of k are part of a unimodular matrix, hence independent.
        CHECK(oracle::bareiss_rank(k) == k.cols());
    }
}

TEST_CASE("lattice basis and membership") {
    Mat gens = Mat::from_rows({{2, 4, 6}, {0, 0, 2}});
    Mat basis = lattice_basis(gens);
    CHECK(basis.cols() == 2);
    CHECK(lattice_contains(basis, {2, 0}));
    CHECK(lattice_contains(basis, {0, 2}));
    CHECK_FALSE(lattice_contains(basis, {1, 0}));
    CHECK_FALSE(lattice_contains(basis, {0, 1}));
    CHECK(lattice_equal(gens, basis));

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        Mat g = random_matrix(rng, 3, int(rng() % 5));
        Mat b = lattice_basis(g);
        CHECK(lattice_equal(g, b));
        CHECK(oracle::bareiss_rank(b) == b.cols());
    }
}

TEST_CASE("preimage lattice") {
    // {x : 2x in 4Z} = 2Z
    Mat f = Mat::from_rows({{2}});
    Mat m = Mat::from_rows({{4}});
    Mat p = preimage_lattice(f, m);
    CHECK(lattice_equal(p, Mat::from_rows({{2}})));

    // Kernel special case: m empty.
    Mat k = preimage_lattice(Mat::from_rows({{2, 3}}), Mat(1, 0));
    CHECK((Mat::from_rows({{2, 3}}) * k).is_zero());
    CHECK(k.cols() == 1);

    // Map to the zero group: everything is in the preimage.
    Mat never(0, 2);
    Mat all = preimage_lattice(never, Mat(0, 0));
    CHECK(lattice_equal(all, Mat::identity(2)));
}

TEST_CASE("quotient presentation structure") {
    // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 as invariant factor.
    auto q = quotient_presentation(Mat::identity(2), Mat::from_rows({{2, 0}, {0, 3}}));
    std::vector<Int> nontrivial;
    for (Int d : q.orders)
        if (d != 1) nontrivial.push_back(d);
    CHECK(nontrivial == std::vector<Int>{6});

    // Z^2 / <(1,0)> = Z
    auto q2 = quotient_presentation(Mat::identity(2), Mat::from_rows({{1}, {0}}));
    int frees = 0, torsions = 0;
    for (Int d : q2.orders) {
        if (d == 0) ++frees;
        if (d >= 2) ++torsions;
    }
    CHECK(frees == 1);
    CHECK(torsions == 0);

    // Sublattice quotient: 2Z / 6Z = Z/3.
    auto q3 = quotient_presentation(Mat::from_rows({{2}}), Mat::from_rows({{6}}));
    CHECK(q3.orders == std::vector<Int>{3});

    // Random agreement with the minors oracle: Z^n / lattice(R).
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng() % 4);
        Mat r = random_matrix(rng, n, int(rng() % 5));
        auto qq = quotient_presentation(Mat::identity(n), r);
        oracle::AbelianType mine;
        for (Int d : qq.orders) {
            if (d == 0) ++mine.free_rank;
            if (d >= 2) mine.torsion.push_back(d);
        }
        CHECK(mine == oracle::cokernel_type(r));
    }
}
