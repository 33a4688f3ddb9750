#pragma once

#include <optional>
#include <vector>

#include "conefort/linalg.hpp"

namespace conefort::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    RatVector x;
    Rational value;
};

/// Exact two-phase simplex with Bland's rule: maximize c.x subject to a x = b, x >= 0.
Result maximize(const RationalMatrix& a, const RatVector& b, const RatVector& c);

enum class Relation { AtLeast, Greater, Equal };

struct Constraint {
    RatVector coeffs;
    Rational rhs;
    Relation relation = Relation::AtLeast;
};

/// A point of R^dim (free variables) satisfying every constraint exactly, or nullopt.
/// Strict rows are handled by maximizing a common margin.
std::optional<RatVector> find_point(std::size_t dim, const std::vector<Constraint>& constraints);

/// Nonnegative multipliers mu with sum mu_i * generators[i] == target, or nullopt (Farkas).
std::optional<RatVector> conic_combination(const std::vector<RatVector>& generators, const RatVector& target);
std::optional<RatVector> conic_combination(const std::vector<IntVector>& generators, const IntVector& target);

}  // namespace conefort::lp
