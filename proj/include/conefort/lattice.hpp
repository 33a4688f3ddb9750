#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conefort/linalg.hpp"

namespace conefort {

/// A lattice in Z^ambient_rank, stored by its column Hermite normal form basis so that
/// equal lattices compare equal.
class IntegerLattice {
public:
    IntegerLattice() = default;

    /// Lattice generated by the columns of `generators` (dependent generators allowed).
    static IntegerLattice from_generators(const IntegerMatrix& generators);
    static IntegerLattice from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators);
    static IntegerLattice standard(std::size_t rank);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t rank() const { return basis_.cols(); }
    bool is_full_rank() const { return rank() == ambient_rank_; }
    const IntegerMatrix& basis() const { return basis_; }
    std::vector<IntVector> basis_vectors() const { return basis_.column_list(); }

    /// Coordinates of `v` in the basis, when v lies in the rational span.
    std::optional<RatVector> rational_coordinates(const RatVector& v) const;
    /// Integer coordinates of `v`, or nullopt when v is not a lattice vector.
    std::optional<IntVector> coordinates(const IntVector& v) const;
    bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

    IntegerLattice scaled(const Integer& factor) const;

    friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
        return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const IntegerLattice& a, const IntegerLattice& b) { return !(a == b); }

private:
    std::size_t ambient_rank_ = 0;
    IntegerMatrix basis_;
};

/// Invariant-factor form Z^free_rank x Z/d1 x ... x Z/dk with d1 | d2 | ... and each di >= 2.
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;
    /// Accepts any list of nonnegative integers; units are dropped, zeros become free rank, and
    /// the torsion part is re-normalized to invariant factors.
    static FiniteAbelianGroup from_cyclic_orders(const IntVector& orders, std::size_t free_rank = 0);

    const IntVector& invariant_factors() const { return factors_; }
    std::size_t free_rank() const { return free_rank_; }
    bool is_finite() const { return free_rank_ == 0; }
    bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
    /// Throws NotFinite when free_rank > 0.
    Integer order() const;
    std::string to_string() const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
    }

private:
    IntVector factors_;
    std::size_t free_rank_ = 0;
};

bool is_prime(const Integer& p);

/// ambient / sub. Throws NotASublattice when a generator of `sub` is not an integral
/// combination of the ambient basis.
FiniteAbelianGroup quotient_group(const IntegerLattice& ambient, const IntegerLattice& sub);

/// Number of invariant factors divisible by p. Throws NotFinite or NotPrime.
std::size_t p_rank(const FiniteAbelianGroup& g, const Integer& p);

}  // namespace conefort
