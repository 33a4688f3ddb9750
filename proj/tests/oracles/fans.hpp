#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "conefort/fan.hpp"

namespace oracle {

using conefort::Cone;
using conefort::Fan;
using conefort::Integer;
using conefort::IntVector;

inline double angle_of(const IntVector& v) { return std::atan2(v[1].get_d(), v[0].get_d()); }

/// Random complete fan in the plane: primitive rays sorted by angle with every gap below pi,
/// consecutive rays spanning the 2-cones.
inline Fan random_complete_plane_fan(std::mt19937_64& rng, long bound = 5) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (;;) {
        std::size_t k = 3 + rng() % 5;
        std::vector<IntVector> rays;
        while (rays.size() < k) {
            IntVector r{Integer(dist(rng)), Integer(dist(rng))};
            if (r[0] == 0 && r[1] == 0) continue;
            Integer g = gcd(r[0], r[1]);
            r[0] /= g;
            r[1] /= g;
            if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
        }
        std::sort(rays.begin(), rays.end(), [](const IntVector& a, const IntVector& b) { return angle_of(a) < angle_of(b); });
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            const auto& a = rays[i];
            const auto& b = rays[(i + 1) % k];
            Integer cross = a[0] * b[1] - a[1] * b[0];
            if (cross <= 0) ok = false;  // gap of at least pi
        }
        if (!ok) continue;
        std::vector<Cone> maximal;
        for (std::size_t i = 0; i < k; ++i) maximal.push_back(Cone::from_rays(2, std::vector<IntVector>{rays[i], rays[(i + 1) % k]}));
        return Fan::from_maximal(2, maximal);
    }
}

}  // namespace oracle
