#pragma once

#include <string>
#include <vector>

#include "conefort/lattice.hpp"

namespace conefort {

enum class Strictness { Boundary, Interior };

/// Rational polyhedral cone with apex at the origin, kept in canonical form:
///  - rays: primitive extreme rays of the pointed part, orthogonal to the lineality space
///  - lineality: canonical basis of the largest linear subspace contained in the cone
///  - facets: primitive irredundant facet normals, taken inside the linear span of the cone
///  - equations: canonical basis of the functionals vanishing on the cone
/// Every list is sorted, so two cones are equal exactly when their canonical forms agree.
class Cone {
public:
    Cone() = default;

    static Cone from_rays(std::size_t ambient_rank, const std::vector<IntVector>& rays);
    static Cone from_rays(std::size_t ambient_rank, const std::vector<RatVector>& rays);
    /// {x : a.x >= 0 for a in geq, e.x = 0 for e in eq}.
    static Cone from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& geq,
                                  const std::vector<IntVector>& eq = {});
    static Cone from_inequalities(std::size_t ambient_rank, const std::vector<RatVector>& geq,
                                  const std::vector<RatVector>& eq = {});
    static Cone zero(std::size_t ambient_rank);
    static Cone full(std::size_t ambient_rank);

    std::size_t ambient_rank() const { return ambient_rank_; }
    std::size_t dimension() const { return ambient_rank_ - equations_.size(); }
    std::size_t lineality_rank() const { return lineality_.size(); }

    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality_basis() const { return lineality_; }
    const std::vector<IntVector>& facets() const { return facets_; }
    const std::vector<IntVector>& equations() const { return equations_; }

    /// Rays together with +/- each lineality basis vector; their nonnegative span is the cone.
    std::vector<IntVector> generators() const;
    /// Facets together with +/- each equation; the cone is where all of them are >= 0.
    std::vector<IntVector> inequalities() const;

    /// Tate twist weight of the ambient space; metadata only, coordinates are never rescaled.
    int twist() const { return twist_; }
    Cone with_twist(int twist) const;

    bool contains(const RatVector& v, Strictness mode = Strictness::Boundary) const;
    bool contains(const IntVector& v, Strictness mode = Strictness::Boundary) const;
    bool contains(const Cone& other) const;

    /// Sum of the rays: a point of the relative interior.
    IntVector interior_point() const;

    Cone negated() const;
    /// Image under the linear map x -> m x.
    Cone image(const RationalMatrix& m) const;
    /// {x : m x in this cone}.
    Cone preimage(const RationalMatrix& m) const;

    std::string to_string() const;

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.ambient_rank_ == b.ambient_rank_ && a.twist_ == b.twist_ && a.rays_ == b.rays_ &&
               a.lineality_ == b.lineality_ && a.facets_ == b.facets_ && a.equations_ == b.equations_;
    }
    friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
    friend bool operator<(const Cone& a, const Cone& b);

private:
    std::size_t ambient_rank_ = 0;
    int twist_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> facets_;
    std::vector<IntVector> equations_;
};

/// Extreme rays of the pointed cone {y : m y >= 0}; requires rank(m) == m.cols().
/// Incremental double description with the algebraic adjacency test.
std::vector<IntVector> pointed_extreme_rays(const RationalMatrix& m);

/// Orthogonal projection of v onto the complement of span(basis).
RatVector project_off(const RatVector& v, const std::vector<IntVector>& basis);

Cone dual(const Cone& c);
/// Every face, from the minimal face (the lineality space, {0} when strongly convex) up to c,
/// ordered by dimension and then canonically.
std::vector<Cone> faces(const Cone& c);
bool is_face(const Cone& face, const Cone& c);
Cone intersect(const Cone& a, const Cone& b);

bool is_strongly_convex(const Cone& c);
bool is_simplicial(const Cone& c);
/// Rays extend to a basis of the full-rank lattice `lattice`.
bool is_smooth(const Cone& c, const IntegerLattice& lattice);
bool is_smooth(const Cone& c);
bool is_top_dimensional(const Cone& c);

}  // namespace conefort
