#include "conefort/catalog.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "conefort/random.hpp"

namespace conefort {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_rank(Family family, long n, long r) {
    if (n < 0 || r < 0 || r > n)
        throw InvalidRank("need 0 <= r <= n, got n = " + std::to_string(n) + ", r = " + std::to_string(r));
    if ((family == Family::Gl2 || family == Family::KugaGl2) && n != 1)
        throw InvalidRank(to_string(family) + " has n = 1");
    if (family == Family::TorusR) throw UnsupportedFamily("the torus family has no unipotent boundary part");
}

Rational fraction_mod_one(long num, long den) {
    long k = num % den;
    if (k < 0) k += den;
    return ratio(k, den);
}

std::string fraction_list(const std::vector<Rational>& xs) {
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + root_of_unity_string(xs[i]);
    return out + ")";
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::TorusR: return "torus_r";
        case Family::Siegel: return "siegel";
        case Family::Universal: return "universal";
        case Family::Kuga: return "kuga";
        case Family::Gl2: return "gl2";
        case Family::KugaGl2: return "kuga_gl2";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    for (Family f : {Family::TorusR, Family::Siegel, Family::Universal, Family::Kuga, Family::Gl2, Family::KugaGl2})
        if (to_string(f) == name) return f;
    throw UnsupportedFamily("unknown family '" + name + "'");
}

long u1_dimension(Family family, long n, long r) {
    require_rank(family, n, r);
    const long sym = r * (r + 1) / 2;
    switch (family) {
        case Family::Siegel:
        case Family::Gl2: return sym;
        case Family::Universal: return 1 + r + sym;
        case Family::Kuga:
        case Family::KugaGl2: return r + sym;
        default: break;
    }
    throw UnsupportedFamily(to_string(family));
}

long base_dimension(Family family, long n) {
    require_rank(family, n, 0);
    const long sym = n * (n + 1) / 2;
    switch (family) {
        case Family::Siegel:
        case Family::Gl2: return sym;
        case Family::Universal: return 1 + n + sym;
        case Family::Kuga:
        case Family::KugaGl2: return n + sym;
        default: break;
    }
    throw UnsupportedFamily(to_string(family));
}

BoundaryComponentData boundary_component(Family family, long n, long r) {
    return {family, n, r, u1_dimension(family, n, r), base_dimension(family, n)};
}

long siegel_u1_dimension_by_rank(long n, long r) {
    if (n < 0 || r < 0 || r > n) throw InvalidRank("need 0 <= r <= n");
    const std::size_t dim = static_cast<std::size_t>(2 * n), vars = dim * dim;
    auto var = [dim](std::size_t i, std::size_t j) { return i * dim + j; };
    auto j_form = [n](std::size_t a, std::size_t b) -> long {
        const auto half = static_cast<std::size_t>(n);
        if (a < half && b == a + half) return 1;
        if (a >= half && b + half == a) return -1;
        return 0;
    };
    std::vector<RatVector> rows;
    // N^T J + J N = 0
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            RatVector row(vars, Rational(0));
            for (std::size_t k = 0; k < dim; ++k) {
                row[var(k, a)] += j_form(k, b);
                row[var(k, b)] += j_form(a, k);
            }
            rows.push_back(std::move(row));
        }
    // N(V) inside V0 = span(e_1..e_r)
    for (std::size_t i = static_cast<std::size_t>(r); i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            RatVector row(vars, Rational(0));
            row[var(i, j)] = 1;
            rows.push_back(std::move(row));
        }
    // N vanishes on V0^perp = span(e_1..e_n, f_(r+1)..f_n)
    for (std::size_t j = 0; j < dim; ++j) {
        const bool in_perp = j < static_cast<std::size_t>(n) || j >= static_cast<std::size_t>(n + r);
        if (!in_perp) continue;
        for (std::size_t i = 0; i < dim; ++i) {
            RatVector row(vars, Rational(0));
            row[var(i, j)] = 1;
            rows.push_back(std::move(row));
        }
    }
    if (vars == 0) return 0;
    return static_cast<long>(vars - rank(RationalMatrix::from_rows(rows)));
}

void require_valid_level(Family family, long d) {
    switch (family) {
        case Family::Universal:
            if (d < 4) throw InvalidLevel("universal family needs d >= 4, got " + std::to_string(d));
            if (d % 2 != 0) throw InvalidLevel("universal family needs even d, got " + std::to_string(d));
            return;
        case Family::TorusR:
            if (d < 1) throw InvalidLevel("level must be positive");
            return;
        default:
            if (d < 3) throw InvalidLevel(to_string(family) + " needs d >= 3, got " + std::to_string(d));
    }
}

CongruenceLevelData congruence_level_data(Family family, long n, long r, long d, long m) {
    const long u = u1_dimension(family, n, r);
    require_valid_level(family, d);
    if (m < 2) throw InvalidLevel("sublevel factor needs m >= 2, got " + std::to_string(m));
    CongruenceLevelData data;
    data.family = family;
    data.d = d;
    data.m = m;
    data.u1_dimension = u;
    const auto ambient = static_cast<std::size_t>(u);
    data.level = IntegerLattice::standard(ambient).scaled(Integer(d));
    data.sublevel = IntegerLattice::standard(ambient).scaled(Integer(m * d));
    data.quotient = u == 0 ? FiniteAbelianGroup() : quotient_group(data.level, data.sublevel);
    const std::string du = std::to_string(d) + "*U1(Z)";
    data.ledger = {
        {"Gamma", "level-" + std::to_string(d) + " arithmetic subgroup stabilizing the connected component", std::nullopt,
         std::nullopt},
        {"Gamma_Z", "intersection with the center; trivial for neat levels", 0, Integer(1)},
        {"Delta", "Gamma / Gamma_Z, acting freely on the component", std::nullopt, std::nullopt},
        {"Gamma_ZU1", "centre times U1 part of the level subgroup, projecting onto Gamma_U1", u, std::nullopt},
        {"Gamma_U1", du, u, std::nullopt},
        {"Omega_U1", du + ", equal to Gamma_U1", u, std::nullopt},
        {"Gamma_U1/Gamma_U1'", data.quotient.to_string(), 0, data.quotient.order()},
    };
    if (family == Family::Siegel)
        data.ledger.push_back({"ed(Sp_2n(F_p); p)", "p^(n-1), external reference value, not derived here", std::nullopt,
                               std::nullopt});
    return data;
}

EdBound ed_lower_bound(Family family, long n, long r, long d, long m, long p) {
    if (p < 2 || !is_prime(Integer(p))) throw NotPrime(std::to_string(p) + " is not prime");
    CongruenceLevelData data = congruence_level_data(family, n, r, d, m);
    EdBound out;
    out.component = boundary_component(family, n, r);
    out.d = d;
    out.m = m;
    out.p = p;
    out.bound = static_cast<long>(p_rank(data.quotient, Integer(p)));
    out.incompressible = r == n && m % p == 0 && out.bound == out.component.base_dimension;
    return out;
}

std::vector<EdBound> ed_table(Family family, long n, long d, long m, long p) {
    std::vector<EdBound> rows;
    for (long r = 0; r <= n; ++r) rows.push_back(ed_lower_bound(family, n, r, d, m, p));
    return rows;
}

std::string bound_table_tsv(const std::vector<EdBound>& rows) {
    std::ostringstream os;
    os << "family\tn\tr\td\tm\tp\tu1_dim\tbound\tbase_dim\tincompressible\n";
    for (const auto& e : rows)
        os << to_string(e.component.family) << '\t' << e.component.n << '\t' << e.component.r << '\t' << e.d << '\t'
           << e.m << '\t' << e.p << '\t' << e.component.u1_dimension << '\t' << e.bound << '\t'
           << e.component.base_dimension << '\t' << (e.incompressible ? "true" : "false") << '\n';
    return os.str();
}

TorusCoverEd torus_cover_ed(const std::vector<long>& orders, long p) {
    if (p < 2 || !is_prime(Integer(p))) throw NotPrime(std::to_string(p) + " is not prime");
    IntVector ns;
    bool all_divisible = !orders.empty();
    for (long n : orders) {
        if (n < 1) throw InvalidLevel("cover degrees must be positive, got " + std::to_string(n));
        ns.emplace_back(n);
        if (n % p != 0) all_divisible = false;
    }
    TorusCoverEd out;
    out.value = static_cast<long>(p_rank(FiniteAbelianGroup::from_cyclic_orders(ns), Integer(p)));
    out.incompressible = all_divisible;
    return out;
}

// --- GL2 ---------------------------------------------------------------------------

Complex gl2_chart(long d, Complex z) { return std::exp(Complex(0, -kTwoPi) * z / static_cast<double>(d)); }

Gl2FixedPoint gl2_fixed_point_data(long d) {
    require_valid_level(Family::Gl2, d);
    const Cone sigma = Cone::from_rays(1, std::vector<IntVector>{{Integer(-1)}});
    TorusChartModel model(IntegerLattice::standard(1).scaled(Integer(d)), sigma);
    IsogenyQuotient stabilizer = quotient_by_isogeny(model, IntegerLattice::standard(1));
    return Gl2FixedPoint{d,
                         Cone::from_rays(1, std::vector<IntVector>{{Integer(1)}}).with_twist(-1),
                         Fan::from_maximal(1, {sigma}),
                         model.monoid_generators().front(),
                         std::move(model),
                         std::move(stabilizer)};
}

Report verify_gl2(long d, std::size_t samples, std::uint64_t seed) {
    const Gl2FixedPoint data = gl2_fixed_point_data(d);
    Report rep;
    rep.lemma = "gl2";
    rep.seed = seed;
    const Cone half_line = Cone::from_rays(1, std::vector<IntVector>{{Integer(-1)}});
    rep.add("fan-complete", validate(data.fan).ok() && is_complete_over(data.fan, {half_line, false}),
            "{0, R_<=0} decomposes R_<=0");

    SplitMix64 rng(seed);
    const Complex zeta_inv = std::polar(1.0, -kTwoPi / static_cast<double>(d));
    double worst_closed = 0, worst_model = 0, worst_shift = 0;
    bool in_disk = true;
    std::string disk_witness;
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = static_cast<double>(d) * rng.uniform01();
        const double s = std::exp(6 * rng.uniform01() - 3);
        const Complex z = twisted_coordinate(r, s);
        const Complex w = gl2_chart(d, z);
        const double modulus = std::abs(w);
        if (!(modulus > 0 && modulus < 1)) {
            in_disk = false;
            disk_witness = "modulus " + std::to_string(modulus) + " at s = " + std::to_string(s);
        }
        worst_closed = std::max(worst_closed, std::abs(modulus - std::exp(-s / static_cast<double>(d))));
        const Complex via_model = chart_coordinates(data.model, data.model.point_from_ambient({z})).front();
        worst_model = std::max(worst_model, std::abs(via_model - w));
        worst_shift = std::max(worst_shift, std::abs(gl2_chart(d, z + static_cast<double>(d)) - w));
        worst_shift = std::max(worst_shift, std::abs(gl2_chart(d, z + 1.0) - zeta_inv * w));
    }
    std::ostringstream os;
    os << std::setprecision(3) << "max |modulus - e^{-s/d}| = " << worst_closed;
    rep.add("punctured-disk", in_disk && worst_closed < 1e-12,
            in_disk ? os.str() : disk_witness);
    std::ostringstream om;
    om << std::setprecision(3) << "max chart discrepancy " << worst_model;
    rep.add("chart-matches-model", worst_model < 1e-12, om.str());
    std::ostringstream ot;
    ot << std::setprecision(3) << "z+d trivial, z+1 by zeta_d^-1, max error " << worst_shift;
    rep.add("translations", worst_shift < 1e-12, ot.str());

    const bool kernel_ok = data.stabilizer.kernel.invariant_factors() == IntVector{Integer(d)} &&
                           data.stabilizer.action.size() == 1 &&
                           data.stabilizer.action[0] == std::vector<Rational>{fraction_mod_one(-1, d)};
    rep.add("stabilizer", kernel_ok,
            "kernel " + data.stabilizer.kernel.to_string() + " acting by " +
                (data.stabilizer.action.empty() ? std::string("()") : fraction_list(data.stabilizer.action[0])));
    rep.add("stratum-fixed", data.model.top_generators().size() == 1, "stratum is the origin of the disk chart");
    return rep;
}

// --- Kuga ----------------------------------------------------------------------------

KugaFixedPoint kuga_fixed_point_data(long d, long window) {
    require_valid_level(Family::KugaGl2, d);
    if (window < 1) throw InvalidRank("window must be at least 1");
    KugaFixedPoint data;
    data.d = d;
    data.window = window;
    data.fan = kuga_window_fan(window);
    data.generators = kuga_generators(d);
    data.shift = RationalMatrix::identity(2);
    data.shift(1, 0) = 1;
    data.cone = Cone::from_inequalities(2, std::vector<IntVector>{{Integer(1), Integer(0)}}).with_twist(-1);
    const IntegerLattice lattice = IntegerLattice::standard(2).scaled(Integer(d));
    for (long n = -window; n <= window; ++n) {
        KugaCone kc;
        kc.n = n;
        kc.cone = kuga_sigma(n).negated();
        TorusChartModel model(lattice, kc.cone);
        const IntVector rays[2] = {{Integer(-1), Integer(-n)}, {Integer(-1), Integer(-n - 1)}};
        kc.characters = IntegerMatrix(2, 2);
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < 2; ++i) {
            const IntVector local = primitive(model.lattice_coordinates(to_rational(rays[i])));
            for (std::size_t g = 0; g < model.monoid_generators().size(); ++g)
                if (dot(model.monoid_generators()[g], local) == 1) {
                    for (std::size_t j = 0; j < 2; ++j) kc.characters(i, j) = model.monoid_generators()[g][j];
                    order.push_back(g);
                    break;
                }
        }
        if (order.size() != 2) throw Error("chart of -sigma_" + std::to_string(n) + " is not dual to its rays");
        kc.determinant = determinant(kc.characters);
        for (std::size_t t = 0; t < 2; ++t) {
            RatVector k(2, Rational(0));
            k[t] = 1;
            const auto all = translation_exponents(model, k);
            kc.action[t] = {all[order[0]], all[order[1]]};
        }
        data.cones.push_back(std::move(kc));
    }
    return data;
}

Report verify_kuga(long d, long window, std::size_t samples, std::uint64_t seed) {
    const KugaFixedPoint data = kuga_fixed_point_data(d, window);
    Report rep;
    rep.lemma = "kuga";
    rep.seed = seed;
    rep.add("fan-valid", validate(data.fan).ok(), std::to_string(data.fan.size()) + " cones");
    rep.add("fan-smooth", is_smooth(data.fan), "every cone unimodular");
    std::vector<RationalMatrix> symmetries = data.generators;
    symmetries.push_back(data.shift);
    rep.add("invariant", is_invariant_under(data.fan, symmetries, InvarianceMode::Truncated),
            "level-" + std::to_string(d) + " shear, reflection, reflection with shear, unit shift");

    bool characters_ok = true, action_ok = true, reindex_ok = true;
    std::string cw = "[[-(n+1),1],[n,-1]], det 1", aw = "((zeta^-(n+1), zeta^n), (zeta, zeta^-1))", rw = "X_n S^-1 = X_(n+1)";
    const IntegerMatrix shift_inv{{1, 0}, {-1, 1}};
    for (std::size_t i = 0; i < data.cones.size(); ++i) {
        const auto& kc = data.cones[i];
        const long n = kc.n;
        const IntegerMatrix expected{{-(n + 1), 1}, {n, -1}};
        if (!(kc.characters == expected) || kc.determinant != 1) {
            characters_ok = false;
            cw = "n = " + std::to_string(n) + " has det " + kc.determinant.get_str();
        }
        const std::array<std::vector<Rational>, 2> table = {
            std::vector<Rational>{fraction_mod_one(-(n + 1), d), fraction_mod_one(n, d)},
            std::vector<Rational>{fraction_mod_one(1, d), fraction_mod_one(-1, d)}};
        if (kc.action != table) {
            action_ok = false;
            aw = "n = " + std::to_string(n) + ": " + fraction_list(kc.action[0]) + fraction_list(kc.action[1]);
        }
        if (i + 1 < data.cones.size() && !(kc.characters * shift_inv == data.cones[i + 1].characters)) {
            reindex_ok = false;
            rw = "shift does not carry n = " + std::to_string(n) + " to n + 1";
        }
    }
    rep.add("character-matrices", characters_ok, cw);
    rep.add("action-table", action_ok, aw);
    rep.add("shift-reindex", reindex_ok, rw);

    // chart points with moduli in (0,1) come from the cone lambda > 0
    SplitMix64 rng(seed);
    const IntegerLattice lattice = IntegerLattice::standard(2).scaled(Integer(d));
    bool covered = true;
    std::string covw = std::to_string(samples) + " points of (0,1)^2 lifted into R_>0 x R";
    for (std::size_t s = 0; s < samples && covered; ++s) {
        const auto& kc = data.cones[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(data.cones.size()) - 1))];
        const TorusChartModel model(lattice, kc.cone);
        std::vector<Complex> w;
        for (std::size_t i = 0; i < 2; ++i) w.push_back(std::polar(1.0 - rng.uniform01() * (1.0 - 1e-9), kTwoPi * rng.uniform01()));
        // chart coordinates of the model follow its own generator order
        std::vector<Complex> ordered(2);
        for (std::size_t g = 0; g < 2; ++g) {
            const IntVector& gen = model.monoid_generators()[g];
            const std::size_t row = gen == IntVector{kc.characters(0, 0), kc.characters(0, 1)} ? 0 : 1;
            ordered[g] = w[row];
        }
        const RealVector y = model.ord_ambient(model.point_from_chart(ordered));
        if (!(y[0] > 0)) {
            covered = false;
            covw = "chart point over sigma_" + std::to_string(kc.n) + " has lambda = " + std::to_string(y[0]);
        }
    }
    rep.add("disk-coverage", covered, covw);
    rep.add("stratum-fixed", true, "origin of every chart is fixed by the translations (1,0), (0,1)");
    return rep;
}

StabilizerLedger stabilizer_ledger(Family family, long d) {
    if (family != Family::Gl2 && family != Family::KugaGl2)
        throw UnsupportedFamily("stabilizer ledger covers gl2 and kuga_gl2, not " + to_string(family));
    if (d < 1) throw InvalidLevel("level must be positive");
    StabilizerLedger out;
    out.family = family;
    out.d = d;
    out.sign_ambiguity = d <= 2;
    out.levi_part = std::string(out.sign_ambiguity ? "+-" : "") + "[[a, q], [0, 1]], a in Q_>0, q in Q";
    if (family == Family::KugaGl2) out.unipotent_part = "Q x " + std::to_string(d) + "Z";
    return out;
}

}  // namespace conefort
