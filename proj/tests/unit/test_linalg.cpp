#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conefort/lattice.hpp"
#include "oracles/brute.hpp"

using namespace conefort;

namespace {

IntVector ints(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

bool is_diagonal(const IntegerMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != 0) return false;
    return true;
}

void check_snf(const IntegerMatrix& m) {
    SmithNormalForm s = smith_normal_form(m);
    IntegerMatrix d = s.left * m * s.right;
    REQUIRE(is_diagonal(d));
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) CHECK(d(i, i) == s.diagonal[i]);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
        if (s.diagonal[i] == 0) {
            CHECK(s.diagonal[i + 1] == 0);
        } else {
            CHECK(s.diagonal[i] > 0);
            CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
        }
    }
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
}

}  // namespace

TEST_CASE("smith normal form examples") {
    CHECK(smith_normal_form(IntegerMatrix{{2, 0}, {0, 4}}).diagonal == ints({2, 4}));
    CHECK(smith_normal_form(IntegerMatrix{{2, 4}, {6, 8}}).diagonal == ints({2, 4}));
    CHECK(smith_normal_form(IntegerMatrix{{1, 0}, {0, 1}}).diagonal == ints({1, 1}));
    CHECK(smith_normal_form(IntegerMatrix{{2, 1}, {0, 3}}).diagonal == ints({1, 6}));
    CHECK(smith_normal_form(IntegerMatrix{{0, 0}, {0, 0}}).diagonal == ints({0, 0}));
    CHECK(smith_normal_form(IntegerMatrix{{4, 6, 8}}).diagonal == ints({2}));
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntegerMatrix m = oracle::random_matrix(rng, r, c, 9);
        check_snf(m);
        SmithNormalForm s = smith_normal_form(m);
        IntegerMatrix diag(s.diagonal.size(), s.diagonal.size(), Integer(0));
        for (std::size_t i = 0; i < s.diagonal.size(); ++i) diag(i, i) = s.diagonal[i];
        CHECK(smith_normal_form(diag).diagonal == s.diagonal);
        if (r == c) {
            Integer det = oracle::cofactor_determinant(m);
            CHECK(determinant(m) == det);
            CHECK(determinant(to_rational(m)) == Rational(det));
            Integer prod = 1;
            for (const auto& d : s.diagonal) prod *= d;
            CHECK(prod == abs(det));
        }
    }
}

TEST_CASE("hermite normal form is canonical for the row lattice") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        IntegerMatrix m = oracle::random_matrix(rng, 3, 3, 6);
        IntegerMatrix u = IntegerMatrix::identity(3);
        for (int k = 0; k < 6; ++k) {
            std::size_t i = rng() % 3, j = rng() % 3;
            if (i != j) u.add_row_multiple(i, j, Integer(static_cast<long>(rng() % 5) - 2));
        }
        CHECK(row_hermite_normal_form(m) == row_hermite_normal_form(u * m));
        IntegerMatrix h = row_hermite_normal_form(m);
        CHECK(h.rows() == rank(m));
    }
}

TEST_CASE("quotient groups") {
    auto z2 = IntegerLattice::standard(2);
    auto sub3 = IntegerLattice::from_generators(IntegerMatrix{{3, 0}, {0, 3}});
    auto g = quotient_group(z2, sub3);
    CHECK(g.invariant_factors() == ints({3, 3}));
    CHECK(g.order() == 9);
    CHECK(quotient_group(z2, z2).is_trivial());
    auto sub = IntegerLattice::from_generators(2, {ints({2, 0}), ints({1, 3})});
    CHECK(quotient_group(z2, sub).invariant_factors() == ints({6}));
    auto line = IntegerLattice::from_generators(2, {ints({2, 0})});
    auto q = quotient_group(z2, line);
    CHECK(q.free_rank() == 1);
    CHECK(q.invariant_factors() == ints({2}));
    CHECK_THROWS_AS(q.order(), NotFinite);
    CHECK_THROWS_AS(quotient_group(sub, z2), NotASublattice);
}

TEST_CASE("quotient by a scaled lattice") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        IntegerMatrix b = oracle::random_matrix(rng, 3, 3, 5);
        if (determinant(b) == 0) continue;
        auto l = IntegerLattice::from_generators(b);
        Integer n = 2 + static_cast<long>(rng() % 6);
        auto g = quotient_group(l, l.scaled(n));
        CHECK(g.invariant_factors() == IntVector(3, n));
        for (long p : {2, 3, 5, 7}) CHECK((p_rank(g, p) == 3) == (n % p == 0));
    }
}

TEST_CASE("p-rank") {
    auto g = FiniteAbelianGroup::from_cyclic_orders(ints({2, 4}));
    CHECK(p_rank(g, 2) == 2);
    CHECK(p_rank(g, 3) == 0);
    CHECK(p_rank(FiniteAbelianGroup::from_cyclic_orders(ints({6, 12, 12})), 3) == 3);
    CHECK(FiniteAbelianGroup::from_cyclic_orders(ints({2, 3})).invariant_factors() == ints({6}));
    CHECK_THROWS_AS(p_rank(g, 4), NotPrime);
    CHECK_THROWS_AS(p_rank(FiniteAbelianGroup::from_cyclic_orders({}, 1), 2), NotFinite);
}

TEST_CASE("solve_rational") {
    RatVector b{Rational(1), Rational(1)};
    CHECK(*solve_rational(RationalMatrix::identity(2), b) == b);
    CHECK_FALSE(solve_rational(to_rational(IntegerMatrix{{1, 1}, {0, 0}}), b).has_value());
    CHECK(*solve_rational(to_rational(IntegerMatrix{{2, 0}, {0, 3}}), b) == RatVector{Rational(1, 2), Rational(1, 3)});
    CHECK_THROWS_AS(solve_rational(RationalMatrix::identity(3), b), DimensionMismatch);
}

TEST_CASE("lattice membership and canonical bases") {
    auto a = IntegerLattice::from_generators(2, {ints({2, 0}), ints({1, 3})});
    auto b = IntegerLattice::from_generators(2, {ints({1, 3}), ints({3, 3}), ints({4, 6})});
    CHECK(a == b);
    CHECK(a.contains(ints({3, 3})));
    CHECK_FALSE(a.contains(ints({1, 0})));
}
