#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conefort/lp.hpp"
#include "oracles/brute.hpp"

using namespace conefort;

namespace {

RatVector rats(std::initializer_list<long> xs) {
    RatVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("small linear programs") {
    // max x + y, x + 2y = 4, x, y >= 0 -> x = 4
    auto r = lp::maximize(to_rational(IntegerMatrix{{1, 2}}), rats({4}), rats({1, 1}));
    REQUIRE(r.status == lp::Status::Optimal);
    CHECK(r.value == 4);
    CHECK(r.x == rats({4, 0}));

    auto inf = lp::maximize(to_rational(IntegerMatrix{{1, 1}}), rats({-1}), rats({0, 0}));
    CHECK(inf.status == lp::Status::Infeasible);

    auto unb = lp::maximize(to_rational(IntegerMatrix{{1, -1}}), rats({0}), rats({1, 0}));
    CHECK(unb.status == lp::Status::Unbounded);

    // redundant equality rows
    auto red = lp::maximize(to_rational(IntegerMatrix{{1, 1}, {2, 2}}), rats({3, 6}), rats({0, 1}));
    REQUIRE(red.status == lp::Status::Optimal);
    CHECK(red.value == 3);
}

TEST_CASE("strict feasibility") {
    using lp::Constraint;
    using lp::Relation;
    std::vector<Constraint> open_quadrant{{rats({1, 0}), 0, Relation::Greater}, {rats({0, 1}), 0, Relation::Greater}};
    auto x = lp::find_point(2, open_quadrant);
    REQUIRE(x.has_value());
    CHECK((*x)[0] > 0);
    CHECK((*x)[1] > 0);

    std::vector<Constraint> empty{{rats({1, 0}), 0, Relation::Greater}, {rats({-1, 0}), 0, Relation::AtLeast}};
    CHECK_FALSE(lp::find_point(2, empty).has_value());

    std::vector<Constraint> line{{rats({1, -1}), 0, Relation::Equal}, {rats({1, 1}), 2, Relation::AtLeast}};
    auto p = lp::find_point(2, line);
    REQUIRE(p.has_value());
    CHECK((*p)[0] == (*p)[1]);
    CHECK((*p)[0] >= 1);
}

TEST_CASE("conic combination agrees with a brute-force search") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<IntVector> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(oracle::random_vector(rng, 2, 3));
        // targets built from small nonnegative integer multipliers are always members
        IntVector target(2, Integer(0));
        for (auto& g : gens) {
            long k = static_cast<long>(rng() % 3);
            for (std::size_t j = 0; j < 2; ++j) target[j] += k * g[j];
        }
        auto mu = lp::conic_combination(gens, target);
        REQUIRE(mu.has_value());
        RatVector back(2, Rational(0));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            CHECK((*mu)[i] >= 0);
            for (std::size_t j = 0; j < 2; ++j) back[j] += (*mu)[i] * gens[i][j];
        }
        CHECK(back == to_rational(target));
    }
    std::vector<IntVector> quadrant{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}};
    CHECK_FALSE(lp::conic_combination(quadrant, IntVector{Integer(-1), Integer(1)}).has_value());
}
