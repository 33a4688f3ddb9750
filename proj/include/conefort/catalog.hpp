#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "conefort/toric.hpp"

namespace conefort {

enum class Family { TorusR, Siegel, Universal, Kuga, Gl2, KugaGl2 };

std::string to_string(Family f);
/// Accepts torus_r, siegel, universal, kuga, gl2, kuga_gl2. Throws UnsupportedFamily.
Family parse_family(const std::string& name);

struct BoundaryComponentData {
    Family family = Family::Siegel;
    long n = 0;  ///< genus, or rank for the torus family
    long r = 0;  ///< isotropic rank
    long u1_dimension = 0;
    long base_dimension = 0;
};

/// Closed-form dim U_1. Throws InvalidRank unless 0 <= r <= n (n = r = 1 for gl2 and kuga_gl2),
/// UnsupportedFamily for the torus family, which has no unipotent part.
long u1_dimension(Family family, long n, long r);
/// Complex dimension of the connected base. Same errors as u1_dimension.
long base_dimension(Family family, long n);
BoundaryComponentData boundary_component(Family family, long n, long r);

/// dim of {N in sp(2n) : N(V) in V0, N(V0^perp) = 0} for V0 = span(e_1..e_r), by exact rank.
long siegel_u1_dimension_by_rank(long n, long r);

/// Symbolic entry of the group ledger.
struct GroupRecord {
    std::string symbol;
    std::string description;
    std::optional<long> rank;
    std::optional<Integer> order;
};

struct CongruenceLevelData {
    Family family = Family::Siegel;
    long d = 1;
    long m = 1;
    long u1_dimension = 0;
    IntegerLattice level;      ///< Gamma_U1(d) = d U1(Z)
    IntegerLattice sublevel;   ///< Gamma_U1(md)
    FiniteAbelianGroup quotient;
    std::vector<GroupRecord> ledger;
};

/// Throws InvalidLevel when d is outside the family's range or m < 2, InvalidRank on (n, r).
CongruenceLevelData congruence_level_data(Family family, long n, long r, long d, long m);

/// Which levels the family admits: siegel, kuga, gl2, kuga_gl2 need d >= 3; universal needs even
/// d >= 4. Throws InvalidLevel naming the violated constraint.
void require_valid_level(Family family, long d);

struct EdBound {
    BoundaryComponentData component;
    long d = 0, m = 0, p = 0;
    long bound = 0;
    bool incompressible = false;
};

/// p-rank of Gamma_U1(d) / Gamma_U1(md); incompressible iff the bound reaches the base dimension
/// at r = n with p | m. Throws InvalidLevel, InvalidRank, NotPrime.
EdBound ed_lower_bound(Family family, long n, long r, long d, long m, long p);

/// One row per r = 0..n.
std::vector<EdBound> ed_table(Family family, long n, long d, long m, long p);

/// Tab-separated with header: family n r d m p u1_dim bound base_dim incompressible.
std::string bound_table_tsv(const std::vector<EdBound>& rows);

struct TorusCoverEd {
    long value = 0;
    bool incompressible = false;
};

/// ed of the multiplication cover of G_m^r by (n_1, ..., n_r) at p. Throws InvalidLevel for
/// n_i < 1, NotPrime.
TorusCoverEd torus_cover_ed(const std::vector<long>& orders, long p);

// --- explicit fixed points ----------------------------------------------------------

struct Gl2FixedPoint {
    long d = 3;
    Cone cone;                 ///< the positive half-axis, twisted
    Fan fan;                   ///< {0, R_<=0}
    IntVector character;       ///< exponent of the chart character in the basis d of dZ
    TorusChartModel model;     ///< (dZ)\C with sigma = R_<=0
    IsogenyQuotient stabilizer;  ///< kernel of (dZ)\C -> Z\C acting on the chart
};

/// Throws InvalidLevel for d < 3.
Gl2FixedPoint gl2_fixed_point_data(long d);

/// e^{-2 pi i z / d}, evaluated in closed form.
Complex gl2_chart(long d, Complex z);

struct KugaCone {
    long n = 0;
    Cone cone;                    ///< -sigma_n
    IntegerMatrix characters;     ///< rows dual to the rays -(1, n), -(1, n + 1)
    Integer determinant;
    /// Exponents of the translations (1, 0) and (0, 1) on the two chart coordinates.
    std::array<std::vector<Rational>, 2> action;
};

struct KugaFixedPoint {
    long d = 3;
    long window = 1;
    Fan fan;
    std::vector<RationalMatrix> generators;  ///< level-d shear, reflection, reflection with shear
    RationalMatrix shift;                    ///< unit shear, sigma_n -> sigma_(n+1)
    Cone cone;                               ///< R_>0 x R closure, twisted
    std::vector<KugaCone> cones;             ///< one per |n| <= window
};

/// Throws InvalidLevel for d < 3, InvalidRank for window < 1.
KugaFixedPoint kuga_fixed_point_data(long d, long window);

struct StabilizerLedger {
    Family family = Family::Gl2;
    long d = 1;
    bool sign_ambiguity = false;  ///< the element -1 survives, only for d <= 2
    std::string unipotent_part;   ///< "Q x dZ" for kuga_gl2
    std::string levi_part;
};

/// Throws UnsupportedFamily outside gl2 and kuga_gl2, InvalidLevel for d < 1.
StabilizerLedger stabilizer_ledger(Family family, long d);

/// Chart, translation and stabilizer checks for the GL2 fixed point over `samples` points.
Report verify_gl2(long d, std::size_t samples, std::uint64_t seed);
/// Fan axioms, smoothness, invariance, character matrices, action table and disk coverage.
Report verify_kuga(long d, long window, std::size_t samples, std::uint64_t seed);

}  // namespace conefort
