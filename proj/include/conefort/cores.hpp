#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conefort/cone.hpp"
#include "conefort/random.hpp"
#include "conefort/report.hpp"

namespace conefort {

/// Rational number or one of the two infinities.
struct ExtendedRational {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rational value;

    static ExtendedRational finite(Rational v) { return {Kind::Finite, std::move(v)}; }
    static ExtendedRational pos_inf() { return {Kind::PosInf, 0}; }
    static ExtendedRational neg_inf() { return {Kind::NegInf, 0}; }

    bool is_finite() const { return kind == Kind::Finite; }
    std::string to_string() const;

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
    }
    friend bool operator<(const ExtendedRational& a, const ExtendedRational& b);
    friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return a < b || a == b; }
    /// Sum; +inf + -inf is not defined and throws.
    friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
    ExtendedRational halved() const;
};

/// Interior of a full-dimensional closed cone in R^n x R^m.
class OpenCone {
public:
    /// Throws NotTopDimensional when closure is not full-dimensional, DimensionMismatch when
    /// n + m differs from the ambient rank.
    OpenCone(Cone closure, std::size_t n, std::size_t m);

    const Cone& closure() const { return closure_; }
    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::size_t rank() const { return n_ + m_; }
    bool contains(const RatVector& x) const { return closure_.contains(x, Strictness::Interior); }

private:
    Cone closure_;
    std::size_t n_;
    std::size_t m_;
};

/// Fourier-Motzkin elimination of the coordinates [keep, ambient) from {x : a.x >= 0};
/// returns an irredundant primitive inequality list in the first `keep` coordinates,
/// with redundancy removed by exact LP.
std::vector<IntVector> fourier_motzkin(const std::vector<IntVector>& geq, std::size_t keep);

/// Random rational point of the relative interior of c.
RatVector sample_relative_interior(const Cone& c, SplitMix64& rng);

struct OpenProjection {
    Cone image;                              ///< cone of the projected rays of the closure
    std::vector<IntVector> eliminated;       ///< irredundant inequalities from Fourier-Motzkin
    bool fm_agrees = false;                  ///< the two routes describe the same closed cone
    bool interior_has_preimage = false;      ///< an interior point of image lifts into the open cone
};

/// Projection dropping the last `drop` coordinates. Throws DimensionMismatch unless
/// 0 < drop < rank.
OpenProjection project_open(const OpenCone& c, std::size_t drop);

/// A point of the open cone mapping to q under the projection dropping `drop` coordinates.
std::optional<RatVector> interior_preimage(const OpenCone& c, std::size_t drop, const RatVector& q);

enum class SigmaCase { A, B, Neither };
std::string to_string(SigmaCase c);

struct SigmaZero {
    Cone closure;  ///< closure of C intersected with R^n x {0}, as a cone in R^n
    SigmaCase tag = SigmaCase::Neither;
};

SigmaZero sigma_zero(const OpenCone& c);

/// Canonical core D = base + C.
class Core {
public:
    /// Throws HypothesisViolated when base is not interior to the cone.
    Core(OpenCone parent, RatVector base);

    const OpenCone& parent() const { return parent_; }
    const RatVector& base() const { return base_; }
    bool contains(const RatVector& x) const;

private:
    OpenCone parent_;
    RatVector base_;
};

/// Open interval of t with point + t * direction inside the open set cut out by the facets
/// (each shifted by `base`); empty intervals come back with lower >= upper.
std::pair<ExtendedRational, ExtendedRational> line_interval(const Cone& closure, const RatVector& base,
                                                            const RatVector& point, const RatVector& direction);

/// inf { t : (v, t z) in D }, +inf when the line misses D.
ExtendedRational core_f(const Core& d, const RatVector& v, const RatVector& z);

/// Projection certificate on one open cone: Fourier-Motzkin against projected rays, plus
/// interior preimages for `samples` random interior points of the image.
Report check_lemma51(const OpenCone& c, std::size_t drop, std::size_t samples, std::uint64_t seed);

/// Level-set properties of a canonical core, `samples` rays with `lambdas` scalings each.
/// Throws HypothesisViolated when neither case A nor case B holds.
Report check_lemma52(const Core& d, std::size_t samples, std::uint64_t seed, std::size_t lambdas = 20);

/// Random full-dimensional cone in R^rank spanned by rank + 1 to rank + 3 rays with entries in
/// [-bound, bound], by rejection sampling.
Cone random_full_cone(SplitMix64& rng, std::size_t rank, long bound = 3);

/// Random canonical core with the requested split and case (A or B), by rejection sampling.
Core random_core(SplitMix64& rng, std::size_t n, std::size_t m, SigmaCase wanted);

}  // namespace conefort
