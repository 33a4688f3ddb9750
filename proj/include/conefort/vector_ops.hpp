#pragma once

#include "conefort/matrix.hpp"

namespace conefort {

inline RatVector concat(const RatVector& a, const RatVector& b) {
    RatVector out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline RatVector head(const RatVector& x, std::size_t k) { return RatVector(x.begin(), x.begin() + static_cast<long>(k)); }
inline RatVector tail(const RatVector& x, std::size_t k) { return RatVector(x.begin() + static_cast<long>(k), x.end()); }

inline RatVector scaled(const RatVector& x, const Rational& s) {
    RatVector out = x;
    for (auto& c : out) c *= s;
    return out;
}

inline RatVector plus(const RatVector& a, const RatVector& b) {
    RatVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

inline RatVector minus(const RatVector& a, const RatVector& b) {
    RatVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

}  // namespace conefort
