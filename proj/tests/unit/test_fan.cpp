#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conefort/fan.hpp"
#include "oracles/brute.hpp"
#include "oracles/fans.hpp"

using namespace conefort;

namespace {

IntVector v(std::initializer_list<long> xs) {
    IntVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Cone cone(std::initializer_list<std::initializer_list<long>> rays, std::size_t n = 2) {
    std::vector<IntVector> rs;
    for (auto r : rays) rs.push_back(v(r));
    return Cone::from_rays(n, rs);
}

Fan quadrant_fan() {
    return Fan::from_maximal(2, {cone({{1, 0}, {0, 1}}), cone({{0, 1}, {-1, 0}}), cone({{-1, 0}, {0, -1}}),
                                 cone({{0, -1}, {1, 0}})});
}

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    return to_rational(IntegerMatrix(rows));
}

}  // namespace

TEST_CASE("validation") {
    CHECK(validate(Fan(2, {Cone::zero(2), cone({{1, 0}})})).ok());
    auto missing = validate(Fan(2, {cone({{1, 0}, {0, 1}})}));
    REQUIRE_FALSE(missing.ok());
    CHECK(missing.violations.front().axiom == "face-closure");
    CHECK(validate(Fan(2, {cone({{1, 0}, {1, 1}}), cone({{1, 1}, {1, 2}}), cone({{1, 1}}), cone({{1, 0}}),
                          cone({{1, 2}}), Cone::zero(2)}))
              .ok());
    auto overlap = validate(Fan::from_maximal(2, {cone({{1, 0}, {1, 2}}), cone({{1, 1}, {0, 1}})}));
    REQUIRE_FALSE(overlap.ok());
    CHECK(overlap.violations.front().axiom == "intersection");
    auto line = validate(Fan(2, {Cone::zero(2), cone({{1, 0}, {-1, 0}})}));
    CHECK(line.violations.front().axiom == "strongly-convex");
}

TEST_CASE("completeness") {
    Fan half_line = Fan::from_maximal(1, {cone({{-1}}, 1)});
    CHECK(is_complete_over(half_line, {cone({{-1}}, 1), false}));
    CHECK_FALSE(is_complete_over(half_line, {Cone::full(1), false}));
    CHECK(is_complete_over(quadrant_fan(), {Cone::full(2), false}));
    Fan three = Fan::from_maximal(2, {cone({{1, 0}, {0, 1}}), cone({{0, 1}, {-1, 0}}), cone({{-1, 0}, {0, -1}})});
    CHECK_FALSE(is_complete_over(three, {Cone::full(2), false}));
    CHECK_THROWS_AS(is_complete_over(Fan(2, {cone({{1, 0}, {0, 1}})}), {Cone::full(2), false}), InvalidFan);

    for (long n : {0L, 1L, 3L}) {
        Fan kuga = kuga_window_fan(n);
        CHECK(validate(kuga).ok());
        Cone wedge = cone({{-1, 0}, {0, 1}, {0, -1}});
        CHECK_FALSE(is_complete_over(kuga, {wedge, false}));
        CHECK_FALSE(is_complete_over(kuga, {wedge, true}));
        CHECK(is_complete_over(kuga, {kuga_window_support(n), false}));
    }
}

TEST_CASE("random plane fans are complete") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        Fan f = oracle::random_complete_plane_fan(rng);
        REQUIRE(validate(f).ok());
        CHECK(is_complete_over(f, {Cone::full(2), false}));
        // removing one maximal cone leaves a valid but incomplete fan
        auto maximal = f.maximal_cones();
        maximal.erase(maximal.begin());
        Fan g = Fan::from_maximal(2, maximal);
        CHECK(validate(g).ok());
        CHECK_FALSE(is_complete_over(g, {Cone::full(2), false}));
    }
}

TEST_CASE("smoothness of fans") {
    CHECK(is_smooth(kuga_window_fan(4)));
    CHECK_FALSE(is_smooth(Fan::from_maximal(2, {cone({{1, 0}, {1, 2}})})));
    CHECK(is_smooth(Fan(2, {Cone::zero(2)})));
}

TEST_CASE("invariance") {
    Fan half_line = Fan::from_maximal(1, {cone({{-1}}, 1)});
    CHECK(is_invariant_under(half_line, {mat({{2}})}));
    CHECK_FALSE(is_invariant_under(half_line, {mat({{-1}})}));
    CHECK(is_invariant_under(quadrant_fan(), {mat({{0, -1}, {1, 0}})}));
    CHECK_FALSE(is_invariant_under(quadrant_fan(), {mat({{1, -1}, {1, 1}})}));
    CHECK_THROWS_AS(is_invariant_under(quadrant_fan(), {mat({{1, 1}, {1, 1}})}), SingularGenerator);

    Fan kuga = kuga_window_fan(5);
    auto gens = kuga_generators(1);
    CHECK_FALSE(is_invariant_under(kuga, gens, InvarianceMode::Strict));
    CHECK(is_invariant_under(kuga, gens, InvarianceMode::Truncated));
    for (long n = -5; n < 5; ++n) {
        CHECK(kuga_sigma(n).image(gens[0]) == kuga_sigma(n + 1));
        CHECK(kuga_sigma(n).image(gens[1]) == kuga_sigma(-(n + 1)));
    }
    CHECK(is_invariant_under(kuga, kuga_generators(3), InvarianceMode::Truncated));
}

TEST_CASE("invariance composes") {
    std::mt19937_64 rng(31);
    Fan q = quadrant_fan();
    std::vector<RationalMatrix> gens{mat({{0, -1}, {1, 0}}), mat({{1, 0}, {0, -1}})};
    for (int trial = 0; trial < 20; ++trial) {
        RationalMatrix word = RationalMatrix::identity(2);
        std::size_t len = 1 + rng() % 4;
        for (std::size_t i = 0; i < len; ++i) word = word * gens[rng() % 2];
        CHECK(is_invariant_under(q, {word}));
    }
}

TEST_CASE("refinement") {
    Fan coarse = Fan::from_maximal(2, {cone({{1, 0}, {0, 1}})});
    Fan fine = Fan::from_maximal(2, {cone({{1, 0}, {1, 1}}), cone({{1, 1}, {0, 1}})});
    CHECK(refines(fine, coarse));
    CHECK_FALSE(refines(coarse, fine));
    Fan transverse = Fan::from_maximal(2, {cone({{1, -1}, {1, 1}})});
    CHECK_FALSE(refines(transverse, coarse));
    Fan wedge = Fan::from_maximal(2, {cone({{-1, 0}, {0, 1}, {0, -1}})});
    CHECK(refines(kuga_window_fan(3), wedge));
    // refinement-stable completeness
    CHECK(is_complete_over(fine, {cone({{1, 0}, {0, 1}}), false}));
}

TEST_CASE("subfans of a valid fan stay valid") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        Fan f = oracle::random_complete_plane_fan(rng);
        auto maximal = f.maximal_cones();
        std::vector<Cone> keep;
        for (const auto& c : maximal)
            if (rng() % 2) keep.push_back(c);
        CHECK(validate(Fan::from_maximal(2, keep)).ok());
    }
}

TEST_CASE("strata and open subsets") {
    Fan q = Fan::from_maximal(2, {cone({{1, 0}, {0, 1}})});
    auto strata = stratum_index(q);
    REQUIRE(strata.size() == 4);
    CHECK(strata.front().dimension == 2);
    CHECK(strata.back().dimension == 0);
    CHECK_FALSE(is_open_subset(q, {cone({{1, 0}, {0, 1}})}));
    CHECK(is_open_subset(q, {cone({{1, 0}}), Cone::zero(2)}));
    CHECK_THROWS_AS(is_open_subset(q, {cone({{1, 1}})}), NotSupported);
}
