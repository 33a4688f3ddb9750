#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conefort/cores.hpp"
#include "conefort/fan.hpp"
#include "conefort/report.hpp"

namespace conefort {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;

/// Log-scale tolerance shared by every numeric comparison on torus points.
inline constexpr double kLogTolerance = 1e-9;
/// A chart coordinate counts as having reached 0 once its modulus drops below 1e-6.
inline constexpr double kVanishingLogModulus = -13.815510557964274;

/// Point of T(C) = Y (x) C^*, one nonzero coordinate per basis vector of the cocharacter lattice.
struct TorusPoint {
    std::vector<Complex> coordinates;

    static TorusPoint identity(std::size_t rank) { return {std::vector<Complex>(rank, Complex(1.0, 0.0))}; }
    /// Coordinates exp(log_moduli[j] + i * arguments[j]).
    static TorusPoint from_polar(const RealVector& log_moduli, const RealVector& arguments);
    std::size_t rank() const { return coordinates.size(); }
};

TorusPoint operator*(const TorusPoint& a, const TorusPoint& b);

/// (ln |t_j|)_j in the fixed splitting.
RealVector ord(const TorusPoint& t);

/// z = r + (2 pi i)^{-1} s.
Complex twisted_coordinate(double r, double s);

/// Affine chart T -> T_sigma: the cone sigma in the cocharacter space with the generators of
/// the character monoid X*(T) meet dual(sigma). Characters are stored as integer exponent
/// vectors with respect to the lattice basis, so chi(t) = prod t_j^{e_j}.
class TorusChartModel {
public:
    /// Throws InvalidRank for a lattice that is not full rank, DimensionMismatch on ambient
    /// ranks, HypothesisViolated when sigma is not strongly convex, NotSupported for a
    /// non-smooth cone of dimension above 3.
    TorusChartModel(IntegerLattice cocharacters, Cone chart_cone);

    std::size_t rank() const { return lattice_.ambient_rank(); }
    const IntegerLattice& cocharacter_lattice() const { return lattice_; }
    const Cone& chart_cone() const { return cone_; }
    const std::vector<IntVector>& monoid_generators() const { return generators_; }
    /// Indices of the generators that do not vanish on sigma; their common zero locus is the stratum.
    const std::vector<std::size_t>& top_generators() const { return top_; }

    /// The generator as a rational functional on the ambient space.
    RatVector character(std::size_t i) const;
    /// Exponent vector of an ambient functional, or nullopt when it is not a character of T.
    std::optional<IntVector> exponents(const RatVector& functional) const;
    /// Coordinates of an ambient vector in the lattice basis.
    RatVector lattice_coordinates(const RatVector& v) const;

    /// Sum ln|t_j| lambda_j in the ambient space.
    RealVector ord_ambient(const TorusPoint& t) const;
    /// t_j = exp(2 pi i <lambda_j^*, z>) for z in the ambient complex space.
    TorusPoint point_from_ambient(const std::vector<Complex>& z) const;
    /// Inverse of chart_coordinates for smooth top-dimensional sigma; throws NotSmooth or
    /// NotTopDimensional otherwise.
    TorusPoint point_from_chart(const std::vector<Complex>& w) const;

private:
    IntegerLattice lattice_;
    Cone cone_;
    std::vector<IntVector> generators_;
    std::vector<std::size_t> top_;
    RationalMatrix basis_inverse_;
};

/// chi(t) = prod t_j^{e_j} for an exponent vector e.
Complex evaluate_character(const IntVector& exponents, const TorusPoint& t);

/// Every monoid generator evaluated at t.
std::vector<Complex> chart_coordinates(const TorusChartModel& m, const TorusPoint& t);

/// Whether the sequence tends to the sigma-stratum: along the second half of the sequence every
/// top-generator log-modulus <chi, ord t> drops by more than `tolerance` at each step and ends
/// below kVanishingLogModulus. Sequences shorter than two points never qualify.
bool approaches_stratum(const TorusChartModel& m, const std::vector<TorusPoint>& seq,
                        double tolerance = kLogTolerance);

/// Hilbert basis of dual(sigma) meet Z^k for a full-dimensional cone sigma in R^k: the dual basis
/// when sigma is smooth, otherwise lattice points of the box spanned by the dual rays (k <= 3).
std::vector<IntVector> dual_hilbert_basis(const Cone& sigma);

// --- the fundamental lemma at the reduced level ------------------------------

/// Reduction of C in R^n x R^m along sigma in R^n: a unimodular change of the first factor puts
/// span(sigma) on the leading k coordinates, and j_sigma projects onto the remaining ones.
struct StratumProjection {
    IntegerMatrix first_factor_change;  ///< unimodular n x n, new = change * old
    std::size_t sigma_dimension = 0;    ///< k
    Cone cone;                          ///< closure of C in the new coordinates
    Cone sigma;                         ///< sigma in R^k
    Cone image;                         ///< closure of j_sigma(C) in R^(n + m - k)
    RatVector offset;                   ///< j_sigma(base) for a core, zero otherwise
    RatVector base;                     ///< base in the new coordinates (zero for a cone)
    SigmaCase tag = SigmaCase::Neither;
    bool fm_agrees = false;
};

/// Throws HypothesisViolated when -sigma is not inside the closure of C or sigma is not strongly
/// convex, NotSupported for sigma = {0}, DimensionMismatch when sigma is not in R^n.
StratumProjection stratum_projection(const OpenCone& c, const Cone& sigma, const RatVector* base = nullptr);

struct FundamentalOptions {
    std::size_t samples = 20;      ///< random second-factor points
    std::size_t sequences = 1000;  ///< numeric sampler sequences per instance
    double tolerance = kLogTolerance;
};

/// Exact certificates (escaping rays, separating functionals) for sample points of the second
/// factor, cross-checked against a numeric approachability sampler.
Report fundamental_lemma_check(const OpenCone& c, const Cone& sigma, std::uint64_t seed,
                               const FundamentalOptions& options = {});
/// Core version: D = base + C.
Report fundamental_lemma_check(const Core& d, const Cone& sigma, std::uint64_t seed,
                               const FundamentalOptions& options = {});

struct FundamentalInstance {
    std::string label;
    OpenCone cone;
    Cone sigma;
    std::optional<RatVector> base;
};

/// Rank <= 3 instances: the GL2 and Kuga slices, the quadrant example, and random cores.
std::vector<FundamentalInstance> fundamental_corpus(std::uint64_t seed, std::size_t count = 30);

Report check_fundamental(const FundamentalInstance& instance, std::uint64_t seed, const FundamentalOptions& options = {});

// --- punctured polydiscs -------------------------------------------------------

struct PolydiscSample {
    std::size_t id = 0;
    RealVector moduli;
    double margin = 0;  ///< smallest normalized facet value of y - shift
    bool pass = false;
};

struct PolydiscResult {
    Report report;
    double certified_radius = 0;  ///< supremum of the radii for which every sample passes
    std::vector<PolydiscSample> samples;
    std::optional<std::size_t> nearest_failure;  ///< failing sample with the largest margin
    std::string csv() const;
};

/// Chart points of T_sigma with coordinate moduli in (0, radius] (the corner |w_i| = radius is
/// always sampled) tested for membership in p(U + i(shift + C)) via y = -sum ln|w_i| rho_i.
/// Throws NotTopDimensional, NotSmooth, HypothesisViolated when sigma is not inside the closure of c.
PolydiscResult punctured_polydisc_check(const IntegerLattice& lattice, const Cone& c, const Cone& sigma, double radius,
                                        std::size_t samples, std::uint64_t seed, const RatVector& shift = {},
                                        double tolerance = kLogTolerance);

// --- isogenies -------------------------------------------------------------------

struct IsogenyQuotient {
    TorusChartModel model;                   ///< chart over the larger cocharacter lattice
    FiniteAbelianGroup kernel;               ///< larger / original
    std::vector<IntVector> kernel_generators;  ///< ambient vectors, one per invariant factor
    /// action[j][i]: generator j multiplies chart coordinate i of the original model by
    /// exp(2 pi i a) with a in [0, 1).
    std::vector<std::vector<Rational>> action;
};

/// Quotient of T_sigma by the kernel of T -> T' for a finite-index overlattice. Throws NotFiniteIndex.
IsogenyQuotient quotient_by_isogeny(const TorusChartModel& m, const IntegerLattice& larger);

/// Translation by the ambient vector k multiplies chart coordinate i by exp(2 pi i a_i); returns
/// the a_i = <chi_i, k> mod 1 in [0, 1).
std::vector<Rational> translation_exponents(const TorusChartModel& m, const RatVector& k);

/// "zeta_d^k" for the root of unity exp(2 pi i a), with a reduced to k/d in [0, 1).
std::string root_of_unity_string(const Rational& a);

}  // namespace conefort
