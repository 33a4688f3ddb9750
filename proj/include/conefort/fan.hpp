#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conefort/cone.hpp"

namespace conefort {

/// Finite collection of cones in a common lattice. Construction canonicalizes (sorts, dedupes);
/// axioms are checked separately by validate().
class Fan {
public:
    Fan() = default;
    Fan(std::size_t ambient_rank, std::vector<Cone> cones);
    Fan(std::size_t ambient_rank, std::vector<Cone> cones, IntegerLattice lattice);

    /// The given cones together with all of their faces.
    static Fan from_maximal(std::size_t ambient_rank, const std::vector<Cone>& maximal);

    std::size_t ambient_rank() const { return ambient_rank_; }
    const std::vector<Cone>& cones() const { return cones_; }
    const IntegerLattice& lattice() const { return lattice_; }
    std::size_t size() const { return cones_.size(); }

    bool contains(const Cone& c) const;
    /// Index in cones(), or size() when absent.
    std::size_t index_of(const Cone& c) const;
    /// Whether v lies in the support |fan|.
    bool covers(const RatVector& v) const;
    std::vector<Cone> maximal_cones() const;

private:
    std::size_t ambient_rank_ = 0;
    std::vector<Cone> cones_;
    IntegerLattice lattice_;
};

struct FanViolation {
    std::string axiom;  ///< "strongly-convex", "ambient-rank", "face-closure", "intersection"
    std::size_t first = 0;
    std::size_t second = 0;
    std::string detail;
};

struct FanReport {
    std::vector<FanViolation> violations;
    bool ok() const { return violations.empty(); }
};

FanReport validate(const Fan& f);

/// Region to be decomposed: the closed cone, or its interior together with the origin when
/// open_part_only is set.
struct SupportRegion {
    Cone closed_cone;
    bool open_part_only = false;
};

/// |fan| == support, decided exactly by recursive halfspace splitting.
/// Throws InvalidFan when f fails validate(), DepthExceeded past the splitting cap.
bool is_complete_over(const Fan& f, const SupportRegion& support);

/// Every cone smooth with respect to the fan's lattice. Throws InvalidFan.
bool is_smooth(const Fan& f);

enum class InvarianceMode {
    Strict,     ///< every image must be a member
    Truncated,  ///< images whose relative interior leaves |fan| are exempt (finite windows of infinite fans)
};

/// Throws SingularGenerator when a generator is not invertible.
bool is_invariant_under(const Fan& f, const std::vector<RationalMatrix>& generators,
                        InvarianceMode mode = InvarianceMode::Strict);

/// Every cone of `fine` lies in some cone of `coarse`.
bool refines(const Fan& fine, const Fan& coarse);

struct Stratum {
    Cone cone;
    std::string label;   ///< "O(i)" with i the cone index
    std::size_t dimension = 0;  ///< complex dimension of the orbit, ambient_rank - dim(cone)
};

/// One torus orbit per cone. Throws InvalidFan.
std::vector<Stratum> stratum_index(const Fan& f);

/// A union of orbits is open iff the cone subset is closed under taking faces. Throws InvalidFan,
/// or NotSupported when a subset cone is not a member.
bool is_open_subset(const Fan& f, const std::vector<Cone>& subset);

// --- the Kuga family of fans in rank 2 ----------------------------------------

/// sigma_n = cone((1, n), (1, n + 1)).
Cone kuga_sigma(long n);

/// Window {-sigma_n : |n| <= window} with all faces.
Fan kuga_window_fan(long window);

/// Closed wedge cone(-(1, -window), -(1, window + 1)) covered by the window.
Cone kuga_window_support(long window);

/// Linear generators of the level-d action on (lambda, v): shear (lambda, v + d lambda),
/// reflection (lambda, -v), and reflection composed with the shear.
std::vector<RationalMatrix> kuga_generators(long d);

}  // namespace conefort
