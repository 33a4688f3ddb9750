#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace conefort {

struct Check {
    std::string name;
    bool pass = false;
    std::string witness;
};

/// Outcome of a verifier: named checks, each with a witness describing the deciding sample.
struct Report {
    std::string lemma;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string witness) {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

}  // namespace conefort
