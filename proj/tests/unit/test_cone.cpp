#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "conefort/cone.hpp"
#include "conefort/lp.hpp"
#include "oracles/brute.hpp"

using namespace conefort;

namespace {

IntVector v(std::initializer_list<long> xs) {
    IntVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

Cone cone(std::size_t n, std::initializer_list<std::initializer_list<long>> rays) {
    std::vector<IntVector> rs;
    for (auto r : rays) rs.push_back(v(r));
    return Cone::from_rays(n, rs);
}

std::vector<IntVector> sorted(std::vector<IntVector> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

Cone random_cone(std::mt19937_64& rng, std::size_t n) {
    std::size_t k = 1 + rng() % (n + 3);
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < k; ++i) rays.push_back(oracle::random_vector(rng, n, 3));
    return Cone::from_rays(n, rays);
}

// Membership by an independent route: the Farkas LP on the generators.
bool member_by_lp(const Cone& c, const IntVector& x) {
    auto gens = c.generators();
    if (gens.empty()) return is_zero(x);
    return lp::conic_combination(gens, x).has_value();
}

}  // namespace

TEST_CASE("halfspaces from rays") {
    CHECK(cone(2, {{1, 0}, {0, 1}}).facets() == sorted({v({1, 0}), v({0, 1})}));
    CHECK(cone(2, {{1, 0}, {1, 1}}).facets() == sorted({v({0, 1}), v({1, -1})}));
    CHECK(cone(2, {{1, 2}, {1, 3}}).facets() == sorted({v({3, -1}), v({-2, 1})}));
    CHECK(cone(2, {{1, 0}, {1, 1}, {0, 1}}).rays() == sorted({v({1, 0}), v({0, 1})}));
}

TEST_CASE("dual cones") {
    Cone q = cone(2, {{1, 0}, {0, 1}});
    CHECK(dual(q) == q);
    CHECK(dual(cone(2, {{1, 0}, {1, 1}})) == cone(2, {{0, 1}, {1, -1}}));
    Cone plane = cone(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    CHECK(plane == Cone::full(2));
    CHECK(dual(plane) == Cone::zero(2));
    CHECK(dual(Cone::zero(3)) == Cone::full(3));
}

TEST_CASE("faces") {
    auto f = faces(cone(2, {{1, 0}, {0, 1}}));
    REQUIRE(f.size() == 4);
    CHECK(f[0] == Cone::zero(2));
    CHECK(faces(cone(2, {{1, 1}})).size() == 2);
    auto g = faces(cone(2, {{1, 0}, {1, 1}, {0, 1}}));
    CHECK(g.size() == 4);
    CHECK_FALSE(is_face(cone(2, {{1, 1}}), cone(2, {{1, 0}, {0, 1}})));
    CHECK(is_face(cone(2, {{1, 0}}), cone(2, {{1, 0}, {0, 1}})));
    Cone half = cone(2, {{1, 0}, {-1, 0}, {0, 1}});
    auto h = faces(half);
    REQUIRE(h.size() == 2);
    CHECK(h[0].dimension() == 1);
    CHECK(h[0].lineality_rank() == 1);
}

TEST_CASE("predicates") {
    for (long n = -4; n <= 4; ++n) CHECK(is_smooth(cone(2, {{1, n}, {1, n + 1}})));
    CHECK_FALSE(is_smooth(cone(2, {{1, 0}, {1, 2}})));
    CHECK(is_simplicial(cone(2, {{1, 0}, {1, 2}})));
    Cone half = cone(2, {{1, 0}, {-1, 0}, {0, 1}});
    CHECK_FALSE(is_strongly_convex(half));
    CHECK(is_top_dimensional(half));
    CHECK_FALSE(is_top_dimensional(cone(3, {{1, 0, 0}, {0, 1, 0}})));
    CHECK_FALSE(is_simplicial(cone(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}})));
    auto even = IntegerLattice::from_generators(2, {v({1, 1}), v({1, -1})});
    CHECK(is_smooth(cone(2, {{1, 1}, {1, -1}}), even));
    CHECK_FALSE(is_smooth(cone(2, {{1, 1}, {1, -1}})));
}

TEST_CASE("containment") {
    Cone q = cone(2, {{1, 0}, {0, 1}});
    CHECK(q.contains(v({1, 1}), Strictness::Interior));
    CHECK_FALSE(q.contains(v({1, 0}), Strictness::Interior));
    CHECK(q.contains(v({1, 0}), Strictness::Boundary));
    CHECK(cone(2, {{1, 0}, {1, 1}}).contains(v({2, 1}), Strictness::Interior));
    CHECK_THROWS_AS(q.contains(v({1, 0, 0})), DimensionMismatch);
    CHECK_THROWS_AS(cone(2, {{1, 0, 0}}), DimensionMismatch);
}

TEST_CASE("intersections") {
    Cone q = cone(2, {{1, 0}, {0, 1}});
    CHECK(intersect(q, cone(2, {{1, 1}, {-1, 1}})) == cone(2, {{0, 1}, {1, 1}}));
    CHECK(intersect(q, cone(2, {{1, 1}, {-1, -1}})) == cone(2, {{1, 1}}));
    CHECK(intersect(q, q) == q);
    CHECK(intersect(q, cone(2, {{-1, 0}, {0, -1}})) == Cone::zero(2));
    CHECK_THROWS_AS(intersect(q, Cone::zero(3)), DimensionMismatch);
}

TEST_CASE("randomized biduality, round trips and order reversal") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 1 + rng() % 4;
        Cone c = random_cone(rng, n);
        CHECK(dual(dual(c)) == c);
        CHECK(Cone::from_rays(n, c.generators()) == c);
        CHECK(Cone::from_inequalities(n, c.inequalities()) == c);
        CHECK(is_strongly_convex(c) == is_top_dimensional(dual(c)));
        for (const auto& r : c.rays()) CHECK(content(r) == 1);
        for (const auto& g : c.generators())
            for (const auto& f : c.inequalities()) CHECK(dot(f, g) >= 0);
        for (int k = 0; k < 10; ++k) {
            IntVector x = oracle::random_vector(rng, n, 4);
            CHECK(c.contains(x) == member_by_lp(c, x));
        }
        auto fs = faces(c);
        if (is_simplicial(c)) CHECK(fs.size() == (std::size_t{1} << c.rays().size()));
        const Cone& tau = fs[rng() % fs.size()];
        CHECK(c.contains(tau));
        CHECK(dual(tau).contains(dual(c)));
        // facets are irredundant: dropping any one changes the cone
        auto facets = c.facets();
        for (std::size_t i = 0; i < facets.size(); ++i) {
            std::vector<IntVector> rest = c.equations();
            for (auto e : c.equations()) {
                for (auto& x : e) x = -x;
                rest.push_back(e);
            }
            for (std::size_t j = 0; j < facets.size(); ++j)
                if (j != i) rest.push_back(facets[j]);
            CHECK(Cone::from_inequalities(n, rest) != c);
        }
    }
}

TEST_CASE("smoothness matches lattice point enumeration in a box") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<IntVector> rays;
        for (int i = 0; i < 2; ++i) rays.push_back(oracle::random_vector(rng, 2, 3));
        Cone c = Cone::from_rays(2, rays);
        if (!is_simplicial(c) || c.rays().size() != 2) continue;
        // the semigroup is generated by the rays iff no lattice point of the half-open
        // parallelogram spanned by the rays is nonzero
        const auto& a = c.rays()[0];
        const auto& b = c.rays()[1];
        bool extra = false;
        for (long x = -7; x <= 7 && !extra; ++x)
            for (long y = -7; y <= 7 && !extra; ++y) {
                if (x == 0 && y == 0) continue;
                auto coords = solve_rational(to_rational(IntegerMatrix::from_columns({a, b}, 2)),
                                             RatVector{Rational(x), Rational(y)});
                if ((*coords)[0] >= 0 && (*coords)[0] < 1 && (*coords)[1] >= 0 && (*coords)[1] < 1) extra = true;
            }
        CHECK(is_smooth(c) == !extra);
    }
}
