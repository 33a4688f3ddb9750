#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "conefort/matrix.hpp"

namespace conefort {

/// SplitMix64: small, fast, and reproducible across platforms for a given seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Random rational num/den with |num| <= bound and 1 <= den <= max_den.
    Rational rational(long bound, long max_den) {
        return ratio(uniform(-bound, bound), uniform(1, max_den));
    }

private:
    std::uint64_t state_;
};

/// CONEFORT_SEED when set to an integer, otherwise `fallback`.
inline std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char* s = std::getenv("CONEFORT_SEED");
    if (!s || !*s) return fallback;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ParseError(std::string("CONEFORT_SEED is not an unsigned integer: ") + s);
    }
}

}  // namespace conefort
