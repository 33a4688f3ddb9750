#include "conefort/toric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "conefort/lp.hpp"
#include "conefort/random.hpp"
#include "conefort/vector_ops.hpp"

namespace conefort {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

RealVector to_real(const RatVector& v) {
    RealVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_d());
    return out;
}

RealVector to_real(const IntVector& v) {
    RealVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get_d());
    return out;
}

double real_dot(const RealVector& a, const RealVector& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double real_norm(const RealVector& a) { return std::sqrt(real_dot(a, a)); }

IntVector to_integer(const RatVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (x.get_den() != 1) throw Error("expected an integral vector, got " + to_string(v));
        out.push_back(x.get_num());
    }
    return out;
}

IntegerMatrix integer_inverse(const IntegerMatrix& m) {
    RationalMatrix inv = inverse(to_rational(m));
    IntegerMatrix out(inv.rows(), inv.cols());
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j) {
            if (inv(i, j).get_den() != 1) throw Error("matrix is not unimodular");
            out(i, j) = inv(i, j).get_num();
        }
    return out;
}

Rational fractional_part(const Rational& a) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    return a - Rational(fl);
}

std::string describe(const RatVector& v) { return to_string(v); }

}  // namespace

// --- torus points ------------------------------------------------------------------

TorusPoint TorusPoint::from_polar(const RealVector& log_moduli, const RealVector& arguments) {
    if (log_moduli.size() != arguments.size()) throw DimensionMismatch("moduli and arguments differ in length");
    TorusPoint t;
    for (std::size_t j = 0; j < log_moduli.size(); ++j) t.coordinates.push_back(std::polar(std::exp(log_moduli[j]), arguments[j]));
    return t;
}

TorusPoint operator*(const TorusPoint& a, const TorusPoint& b) {
    if (a.rank() != b.rank()) throw DimensionMismatch("torus points of different rank");
    TorusPoint out = a;
    for (std::size_t j = 0; j < a.rank(); ++j) out.coordinates[j] *= b.coordinates[j];
    return out;
}

RealVector ord(const TorusPoint& t) {
    RealVector out;
    out.reserve(t.rank());
    for (const auto& c : t.coordinates) out.push_back(std::log(std::abs(c)));
    return out;
}

Complex twisted_coordinate(double r, double s) { return {r, -s / kTwoPi}; }

Complex evaluate_character(const IntVector& exponents, const TorusPoint& t) {
    if (exponents.size() != t.rank()) throw DimensionMismatch("character and point ranks differ");
    double log_modulus = 0, argument = 0;
    for (std::size_t j = 0; j < t.rank(); ++j) {
        const double e = exponents[j].get_d();
        log_modulus += e * std::log(std::abs(t.coordinates[j]));
        argument += e * std::arg(t.coordinates[j]);
    }
    return std::polar(std::exp(log_modulus), argument);
}

// --- Hilbert bases -------------------------------------------------------------------

std::vector<IntVector> dual_hilbert_basis(const Cone& sigma) {
    const std::size_t k = sigma.ambient_rank();
    if (!is_top_dimensional(sigma)) throw NotTopDimensional("Hilbert basis needs a full-dimensional cone");
    std::vector<IntVector> out;
    if (is_smooth(sigma)) {
        RationalMatrix inv = inverse(to_rational(IntegerMatrix::from_columns(sigma.rays(), k)));
        for (std::size_t i = 0; i < k; ++i) out.push_back(to_integer(inv.row(i)));
        std::sort(out.begin(), out.end(), lex_less);
        return out;
    }
    if (k > 3) throw NotSupported("Hilbert basis of a non-smooth cone of rank " + std::to_string(k));

    const Cone d = dual(sigma);
    IntVector bound(k, Integer(0));
    for (const auto& g : d.rays())
        for (std::size_t c = 0; c < k; ++c) bound[c] += abs(g[c]);
    const auto& rays = sigma.rays();
    auto in_dual = [&](const IntVector& x) {
        return std::all_of(rays.begin(), rays.end(), [&](const IntVector& r) { return dot(r, x) >= 0; });
    };
    auto grade = [&](const IntVector& x) {
        Integer s = 0;
        for (const auto& r : rays) s += dot(r, x);
        return s;
    };

    std::vector<std::pair<Integer, IntVector>> points;
    IntVector x(k);
    for (std::size_t c = 0; c < k; ++c) x[c] = -bound[c];
    while (true) {
        if (!is_zero(x) && in_dual(x)) points.emplace_back(grade(x), x);
        std::size_t c = 0;
        while (c < k && x[c] == bound[c]) {
            x[c] = -bound[c];
            ++c;
        }
        if (c == k) break;
        x[c] += 1;
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return lex_less(a.second, b.second);
    });
    for (const auto& [g, p] : points) {
        bool reducible = false;
        for (const auto& h : out) {
            IntVector diff = p;
            for (std::size_t c = 0; c < k; ++c) diff[c] -= h[c];
            if (in_dual(diff)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) out.push_back(p);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

// --- chart models ---------------------------------------------------------------------

TorusChartModel::TorusChartModel(IntegerLattice cocharacters, Cone chart_cone)
    : lattice_(std::move(cocharacters)), cone_(std::move(chart_cone)) {
    if (!lattice_.is_full_rank()) throw InvalidRank("chart model needs a full-rank cocharacter lattice");
    const std::size_t r = rank();
    if (cone_.ambient_rank() != r) throw DimensionMismatch("chart cone and lattice ambient ranks differ");
    if (!is_strongly_convex(cone_)) throw HypothesisViolated("chart cone " + cone_.to_string() + " contains a line");
    basis_inverse_ = inverse(to_rational(lattice_.basis()));

    std::vector<IntVector> rays;
    for (const auto& rho : cone_.rays()) rays.push_back(primitive(basis_inverse_ * to_rational(rho)));
    const std::size_t k = cone_.dimension();

    IntegerMatrix change = IntegerMatrix::identity(r);
    std::vector<IntVector> psi;
    if (k > 0) {
        change = smith_normal_form(IntegerMatrix::from_columns(rays, r)).left;
        std::vector<IntVector> local;
        for (const auto& rho : rays) {
            IntVector y = change * rho;
            y.resize(k);
            local.push_back(std::move(y));
        }
        for (auto h : dual_hilbert_basis(Cone::from_rays(k, local))) {
            h.resize(r, Integer(0));
            psi.push_back(std::move(h));
        }
    }
    for (std::size_t j = k; j < r; ++j) {
        IntVector e(r, Integer(0));
        e[j] = 1;
        psi.push_back(e);
        e[j] = -1;
        psi.push_back(e);
    }
    const IntegerMatrix change_t = change.transpose();
    for (const auto& p : psi) generators_.push_back(change_t * p);
    std::sort(generators_.begin(), generators_.end(), lex_less);
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (std::any_of(rays.begin(), rays.end(), [&](const IntVector& rho) { return dot(generators_[i], rho) != 0; }))
            top_.push_back(i);
}

RatVector TorusChartModel::character(std::size_t i) const {
    return basis_inverse_.transpose() * to_rational(generators_.at(i));
}

std::optional<IntVector> TorusChartModel::exponents(const RatVector& functional) const {
    if (functional.size() != rank()) throw DimensionMismatch("functional has the wrong length");
    RatVector e = to_rational(lattice_.basis()).transpose() * functional;
    IntVector out;
    for (const auto& x : e) {
        if (x.get_den() != 1) return std::nullopt;
        out.push_back(x.get_num());
    }
    return out;
}

RatVector TorusChartModel::lattice_coordinates(const RatVector& v) const { return basis_inverse_ * v; }

RealVector TorusChartModel::ord_ambient(const TorusPoint& t) const {
    if (t.rank() != rank()) throw DimensionMismatch("torus point has the wrong rank");
    const RealVector logs = ord(t);
    RealVector out(rank(), 0.0);
    const auto& b = lattice_.basis();
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) out[i] += b(i, j).get_d() * logs[j];
    return out;
}

TorusPoint TorusChartModel::point_from_ambient(const std::vector<Complex>& z) const {
    if (z.size() != rank()) throw DimensionMismatch("ambient point has the wrong length");
    TorusPoint t;
    for (std::size_t j = 0; j < rank(); ++j) {
        Complex pairing = 0;
        for (std::size_t c = 0; c < rank(); ++c) pairing += basis_inverse_(j, c).get_d() * z[c];
        t.coordinates.push_back(std::exp(Complex(0, kTwoPi) * pairing));
    }
    return t;
}

TorusPoint TorusChartModel::point_from_chart(const std::vector<Complex>& w) const {
    if (!is_top_dimensional(cone_)) throw NotTopDimensional("chart inversion needs a top-dimensional cone");
    if (!is_smooth(cone_, lattice_)) throw NotSmooth("chart inversion needs a smooth cone");
    if (w.size() != rank()) throw DimensionMismatch("chart point has the wrong length");
    const IntegerMatrix inv = integer_inverse(IntegerMatrix::from_rows(generators_));
    RealVector log_moduli(rank(), 0.0), arguments(rank(), 0.0);
    for (std::size_t j = 0; j < rank(); ++j)
        for (std::size_t i = 0; i < rank(); ++i) {
            const double e = inv(j, i).get_d();
            log_moduli[j] += e * std::log(std::abs(w[i]));
            arguments[j] += e * std::arg(w[i]);
        }
    return TorusPoint::from_polar(log_moduli, arguments);
}

std::vector<Complex> chart_coordinates(const TorusChartModel& m, const TorusPoint& t) {
    std::vector<Complex> out;
    for (const auto& g : m.monoid_generators()) out.push_back(evaluate_character(g, t));
    return out;
}

bool approaches_stratum(const TorusChartModel& m, const std::vector<TorusPoint>& seq, double tolerance) {
    if (seq.size() < 2) return false;
    const std::size_t start = std::min(seq.size() / 2, seq.size() - 2);
    std::vector<RealVector> logs;
    for (std::size_t k = start; k < seq.size(); ++k) {
        if (seq[k].rank() != m.rank()) throw DimensionMismatch("torus point has the wrong rank");
        logs.push_back(ord(seq[k]));
    }
    for (std::size_t i : m.top_generators()) {
        const RealVector e = to_real(m.monoid_generators()[i]);
        double previous = real_dot(e, logs.front());
        for (std::size_t k = 1; k < logs.size(); ++k) {
            const double current = real_dot(e, logs[k]);
            if (!(current < previous - tolerance)) return false;
            previous = current;
        }
        if (!(previous < kVanishingLogModulus)) return false;
    }
    return true;
}

// --- fundamental lemma -------------------------------------------------------------------

StratumProjection stratum_projection(const OpenCone& c, const Cone& sigma, const RatVector* base) {
    const std::size_t n = c.n(), rank = c.rank();
    if (sigma.ambient_rank() != n) throw DimensionMismatch("sigma must live in the first factor R^" + std::to_string(n));
    if (sigma.dimension() == 0) throw NotSupported("sigma = {0}: the stratum is the open torus");
    if (!is_strongly_convex(sigma)) throw HypothesisViolated("sigma " + sigma.to_string() + " contains a line");
    if (base && base->size() != rank) throw DimensionMismatch("core base has the wrong length");
    for (const auto& rho : sigma.rays()) {
        RatVector x(rank, Rational(0));
        for (std::size_t i = 0; i < n; ++i) x[i] = -rho[i];
        if (!c.closure().contains(x))
            throw HypothesisViolated("-sigma is not inside the closure of C: missing " + to_string(primitive(x)));
    }

    StratumProjection p;
    const std::size_t k = sigma.dimension();
    p.sigma_dimension = k;
    p.first_factor_change = smith_normal_form(IntegerMatrix::from_columns(sigma.rays(), n)).left;
    RationalMatrix change = RationalMatrix::identity(rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) change(i, j) = p.first_factor_change(i, j);
    p.cone = c.closure().image(change);
    p.base = base ? change * *base : RatVector(rank, Rational(0));

    std::vector<IntVector> local;
    for (const auto& rho : sigma.rays()) {
        IntVector y = p.first_factor_change * rho;
        y.resize(k);
        local.push_back(std::move(y));
    }
    p.sigma = Cone::from_rays(k, local);

    const std::size_t rest = rank - k;
    p.tag = sigma_zero(OpenCone(p.cone, k, rest)).tag;
    p.offset = tail(p.base, k);
    if (rest == 0) {
        p.image = Cone::full(0);
        p.fm_agrees = true;
        return p;
    }
    RationalMatrix rotate(rank, rank, Rational(0));
    for (std::size_t i = 0; i < rest; ++i) rotate(i, k + i) = 1;
    for (std::size_t i = 0; i < k; ++i) rotate(rest + i, i) = 1;
    OpenProjection proj = project_open(OpenCone(p.cone.image(rotate), rest, k), k);
    p.image = proj.image;
    p.fm_agrees = proj.fm_agrees;
    return p;
}

namespace {

enum class SampleClass { Interior, Boundary, Exterior };

struct Tally {
    std::size_t count = 0;
    bool ok = true;
    std::string witness;
    void fail(const std::string& w) {
        if (ok) witness = w;
        ok = false;
    }
};

/// Numeric approachability: some sequence (v0 + mu (1 + j) w, z), w in -relint(sigma), stays
/// inside D and escapes along -sigma.
bool sampler_approaches(const StratumProjection& p, const RatVector& z, std::size_t trials, double tolerance,
                        SplitMix64& rng) {
    const std::size_t k = p.sigma_dimension;
    std::vector<RealVector> facets;
    std::vector<double> norms;
    for (const auto& a : p.cone.facets()) {
        facets.push_back(to_real(a));
        norms.push_back(real_norm(facets.back()));
    }
    std::vector<RealVector> sigma_facets;
    for (const auto& f : p.sigma.facets()) sigma_facets.push_back(to_real(f));
    std::vector<RealVector> rays;
    for (const auto& r : p.sigma.rays()) rays.push_back(to_real(r));
    const RealVector zr = to_real(z), base = to_real(p.base);

    for (std::size_t t = 0; t < trials; ++t) {
        RealVector w(k, 0.0), v0(k, 0.0);
        for (const auto& r : rays) {
            const double coeff = 0.1 + 0.9 * rng.uniform01();
            for (std::size_t i = 0; i < k; ++i) w[i] -= coeff * r[i];
        }
        for (auto& x : v0) x = 2 * rng.uniform01() - 1;
        const double mu = std::ldexp(1.0, static_cast<int>(rng.uniform(-8, 30)));
        bool inside = true;
        std::vector<double> previous(sigma_facets.size(), HUGE_VAL);
        for (int j = 0; j < 8 && inside; ++j) {
            RealVector point(k);
            for (std::size_t i = 0; i < k; ++i) point[i] = v0[i] + mu * (1 + j) * w[i];
            point.insert(point.end(), zr.begin(), zr.end());
            for (std::size_t a = 0; a < facets.size() && inside; ++a) {
                double margin = 0;
                for (std::size_t i = 0; i < point.size(); ++i) margin += facets[a][i] * (point[i] - base[i]);
                if (!(margin / norms[a] > tolerance)) inside = false;
            }
            for (std::size_t f = 0; f < sigma_facets.size() && inside; ++f) {
                const double value = real_dot(sigma_facets[f], RealVector(point.begin(), point.begin() + static_cast<long>(k)));
                if (!(value < previous[f])) inside = false;
                previous[f] = value;
            }
        }
        if (inside) return true;
    }
    return false;
}

Report fundamental_impl(const OpenCone& c, const Cone& sigma, const RatVector* base, std::uint64_t seed,
                        const FundamentalOptions& options) {
    StratumProjection p = stratum_projection(c, sigma, base);
    const std::size_t k = p.sigma_dimension, rest = p.image.ambient_rank();
    Report rep;
    rep.lemma = "fundamental";
    rep.seed = seed;
    rep.add("hypothesis", p.tag != SigmaCase::Neither,
            "case " + to_string(p.tag) + ", sigma " + p.sigma.to_string() + " in the first " + std::to_string(k) +
                " coordinates");
    rep.add("image-fm-equals-projected-rays", p.fm_agrees, "j_sigma image " + p.image.to_string());

    SplitMix64 rng(seed);
    std::vector<std::pair<RatVector, SampleClass>> samples;
    auto classify = [&](const RatVector& z) {
        const RatVector rel = minus(z, p.offset);
        if (rest == 0 || p.image.contains(rel, Strictness::Interior)) return SampleClass::Interior;
        if (p.image.contains(rel)) return SampleClass::Boundary;
        return SampleClass::Exterior;
    };
    if (rest == 0) {
        samples.emplace_back(RatVector{}, SampleClass::Interior);
    } else {
        // half inside the image, half anywhere in a box around the offset
        for (std::size_t s = 0; s < options.samples; ++s) {
            RatVector z(rest);
            if (s % 2 == 0) {
                z = sample_relative_interior(p.image, rng);
            } else {
                for (auto& x : z) x = rng.rational(6, 3);
            }
            z = plus(z, p.offset);
            samples.emplace_back(z, classify(z));
        }
        for (const auto& h : p.image.facets()) {
            RatVector z(rest, Rational(0));
            for (const auto& r : p.image.rays())
                if (dot(h, r) == 0) z = plus(z, to_rational(r));
            z = plus(z, p.offset);
            samples.emplace_back(z, classify(z));
        }
    }

    RationalMatrix back = RationalMatrix::identity(k + rest);
    {
        const RationalMatrix inv = inverse(to_rational(p.first_factor_change));
        for (std::size_t i = 0; i < inv.rows(); ++i)
            for (std::size_t j = 0; j < inv.cols(); ++j) back(i, j) = inv(i, j);
    }
    auto original = [&](const RatVector& x) { return describe(back * x); };

    RatVector w(k, Rational(0));
    for (const auto& r : p.sigma.rays()) w = minus(w, to_rational(r));
    const RatVector direction = concat(w, RatVector(rest, Rational(0)));

    Tally interior, exterior, boundary;
    for (const auto& [z, cls] : samples) {
        const RatVector at_zero = concat(RatVector(k, Rational(0)), z);
        if (cls == SampleClass::Interior) {
            ++interior.count;
            auto [lower, upper] = line_interval(p.cone, p.base, at_zero, direction);
            if (upper.kind != ExtendedRational::Kind::PosInf || !(lower < upper)) {
                interior.fail("no escaping ray over " + describe(z));
                continue;
            }
            const Rational lambda = lower.is_finite() ? lower.value + 1 : Rational(0);
            const RatVector start = concat(scaled(w, lambda), z);
            const bool certified = p.cone.contains(minus(start, p.base), Strictness::Interior) &&
                                   p.cone.contains(direction) &&
                                   p.sigma.contains(scaled(w, Rational(-1)), Strictness::Interior);
            if (!certified) interior.fail("escaping ray from " + original(start) + " not certified");
            else if (interior.count == 1)
                interior.witness = "e.g. " + original(start) + " + t * " + original(direction);
        } else if (cls == SampleClass::Exterior) {
            ++exterior.count;
            const RatVector rel = minus(z, p.offset);
            std::optional<IntVector> separating;
            for (const auto& h : p.image.inequalities())
                if (dot(h, rel) < 0) {
                    separating = h;
                    break;
                }
            bool certified = separating.has_value();
            if (certified)
                for (const auto& g : p.cone.generators()) {
                    IntVector gz(g.begin() + static_cast<long>(k), g.end());
                    if (dot(*separating, gz) < 0) certified = false;
                }
            if (!certified) exterior.fail("no separating functional for " + describe(z));
            else if (exterior.count == 1)
                exterior.witness = "e.g. " + to_string(*separating) + " separates " + describe(z);
        } else {
            ++boundary.count;
            std::vector<lp::Constraint> closed, open;
            for (const auto& a : p.cone.facets()) {
                RatVector av(a.begin(), a.begin() + static_cast<long>(k));
                IntVector az(a.begin() + static_cast<long>(k), a.end());
                Rational rhs = dot(a, p.base) - dot(az, z);
                closed.push_back({av, rhs, lp::Relation::AtLeast});
                open.push_back({av, rhs, lp::Relation::Greater});
            }
            const bool in_closed = lp::find_point(k, closed).has_value();
            const bool in_open = lp::find_point(k, open).has_value();
            if (!in_closed || in_open) boundary.fail("boundary point " + describe(z) + " misclassified");
        }
    }
    auto summary = [](const Tally& t, const std::string& what) {
        return std::to_string(t.count) + " " + what + (t.witness.empty() ? "" : "; " + t.witness);
    };
    rep.add("interior-samples-escape", interior.ok, summary(interior, "interior samples"));
    rep.add("exterior-samples-separated", exterior.ok, summary(exterior, "exterior samples"));
    rep.add("boundary-samples-in-closed-image", boundary.ok, summary(boundary, "boundary samples"));

    std::size_t decided = 0;
    for (const auto& s : samples)
        if (s.second != SampleClass::Boundary) ++decided;
    const std::size_t per_sample = std::max<std::size_t>(1, (options.sequences + decided - 1) / std::max<std::size_t>(1, decided));
    Tally agree;
    for (const auto& [z, cls] : samples) {
        if (cls == SampleClass::Boundary) continue;
        const bool approached = sampler_approaches(p, z, per_sample, options.tolerance, rng);
        if (approached != (cls == SampleClass::Interior))
            agree.fail("sampler says " + std::string(approached ? "approachable" : "unreachable") + " at " + describe(z));
    }
    rep.add("sampler-agrees", agree.ok,
            std::to_string(per_sample * decided) + " sequences over " + std::to_string(decided) + " samples" +
                (agree.witness.empty() ? "" : "; " + agree.witness));
    return rep;
}

}  // namespace

Report fundamental_lemma_check(const OpenCone& c, const Cone& sigma, std::uint64_t seed, const FundamentalOptions& options) {
    return fundamental_impl(c, sigma, nullptr, seed, options);
}

Report fundamental_lemma_check(const Core& d, const Cone& sigma, std::uint64_t seed, const FundamentalOptions& options) {
    return fundamental_impl(d.parent(), sigma, &d.base(), seed, options);
}

Report check_fundamental(const FundamentalInstance& instance, std::uint64_t seed, const FundamentalOptions& options) {
    return fundamental_impl(instance.cone, instance.sigma, instance.base ? &*instance.base : nullptr, seed, options);
}

std::vector<FundamentalInstance> fundamental_corpus(std::uint64_t seed, std::size_t count) {
    std::vector<FundamentalInstance> out;
    const Cone half_plane = Cone::from_inequalities(2, std::vector<IntVector>{{Integer(1), Integer(0)}});
    out.push_back({"gl2-slice", OpenCone(Cone::from_rays(1, std::vector<IntVector>{{Integer(1)}}), 1, 0),
                   Cone::from_rays(1, std::vector<IntVector>{{Integer(-1)}}), std::nullopt});
    out.push_back({"kuga-slice", OpenCone(half_plane, 2, 0), kuga_sigma(2).negated(), std::nullopt});
    out.push_back({"kuga-ray", OpenCone(half_plane, 2, 0),
                   Cone::from_rays(2, std::vector<IntVector>{{Integer(-1), Integer(-2)}}), std::nullopt});
    out.push_back({"quadrant", OpenCone(Cone::from_inequalities(2, std::vector<IntVector>{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}), 1, 1),
                   Cone::from_rays(1, std::vector<IntVector>{{Integer(-1)}}), std::nullopt});

    SplitMix64 rng(seed);
    const std::pair<std::size_t, std::size_t> splits[] = {{1, 1}, {1, 2}, {2, 1}};
    for (std::size_t i = 0; out.size() < count; ++i) {
        const auto [n, m] = splits[i % 3];
        const SigmaCase wanted = (i / 3) % 2 == 0 ? SigmaCase::A : SigmaCase::B;
        Core core = random_core(rng, n, m, wanted);
        const std::vector<IntVector> gens = sigma_zero(core.parent()).closure.generators();
        std::vector<IntVector> picks;
        while (true) {
            picks.clear();
            for (std::size_t j = 0; j < n; ++j) {
                IntVector v(n, Integer(0));
                for (const auto& g : gens) {
                    const long coeff = rng.uniform(1, 3);
                    for (std::size_t c = 0; c < n; ++c) v[c] += coeff * g[c];
                }
                for (auto& x : v) x = -x;
                picks.push_back(primitive(v));
            }
            if (rank(IntegerMatrix::from_rows(picks)) == n) break;
        }
        std::optional<RatVector> base;
        if (i % 2 == 1) base = core.base();
        out.push_back({"random-" + std::to_string(n) + "+" + std::to_string(m) + "-" + to_string(wanted) +
                           (base ? "-core" : "-cone"),
                       core.parent(), Cone::from_rays(n, picks), base});
    }
    return out;
}

// --- punctured polydiscs ----------------------------------------------------------------

std::string PolydiscResult::csv() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "sample";
    const std::size_t r = samples.empty() ? 0 : samples.front().moduli.size();
    for (std::size_t i = 0; i < r; ++i) os << ",modulus_" << (i + 1);
    os << ",pass\n";
    for (const auto& s : samples) {
        os << s.id;
        for (double x : s.moduli) os << ',' << x;
        os << ',' << (s.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

PolydiscResult punctured_polydisc_check(const IntegerLattice& lattice, const Cone& c, const Cone& sigma, double radius,
                                        std::size_t samples, std::uint64_t seed, const RatVector& shift_in,
                                        double tolerance) {
    const std::size_t r = lattice.ambient_rank();
    if (c.ambient_rank() != r || sigma.ambient_rank() != r) throw DimensionMismatch("lattice, cone and sigma ranks differ");
    if (!is_top_dimensional(c)) throw NotTopDimensional("the open cone needs a full-dimensional closure");
    if (!is_top_dimensional(sigma)) throw NotTopDimensional("sigma must be top-dimensional");
    if (!is_smooth(sigma, lattice)) throw NotSmooth("sigma is not smooth for the lattice");
    if (!c.contains(sigma)) throw HypothesisViolated("sigma is not inside the closure of the cone");
    const RatVector shift = shift_in.empty() ? RatVector(r, Rational(0)) : shift_in;
    if (shift.size() != r) throw DimensionMismatch("shift has the wrong length");

    const TorusChartModel model(lattice, sigma.negated());
    std::vector<RealVector> facets;
    for (const auto& a : c.facets()) {
        RealVector f = to_real(a);
        const double norm = real_norm(f);
        for (auto& x : f) x /= norm;
        facets.push_back(std::move(f));
    }
    const RealVector shift_real = to_real(shift);

    PolydiscResult result;
    // sup of the radii: y = sum l_i rho_i with every l_i > -ln(radius) must clear each shifted facet
    RatVector ray_sum(r, Rational(0));
    for (const auto& rho : sigma.rays()) {
        RatVector coords = *lattice.rational_coordinates(to_rational(rho));
        RatVector generator = to_rational(lattice.basis()) * to_rational(primitive(coords));
        ray_sum = plus(ray_sum, generator);
    }
    double worst = 0;
    bool degenerate = false;
    for (const auto& a : c.facets()) {
        const Rational s = dot(a, ray_sum), ac = dot(a, shift);
        if (s == 0) {
            if (ac >= 0) degenerate = true;
            continue;
        }
        worst = std::max(worst, Rational(ac / s).get_d());
    }
    result.certified_radius = degenerate ? 0.0 : std::exp(-worst);

    SplitMix64 rng(seed);
    for (std::size_t id = 0; id < samples; ++id) {
        PolydiscSample s;
        s.id = id;
        std::vector<Complex> w;
        for (std::size_t i = 0; i < r; ++i) {
            const double u = 1.0 - rng.uniform01();
            const double modulus = id == 0 ? radius : radius * u * u;
            s.moduli.push_back(modulus);
            w.push_back(std::polar(modulus, kTwoPi * rng.uniform01()));
        }
        const RealVector y = model.ord_ambient(model.point_from_chart(w));
        s.margin = HUGE_VAL;
        for (const auto& f : facets) {
            double value = 0;
            for (std::size_t i = 0; i < r; ++i) value += f[i] * (y[i] - shift_real[i]);
            s.margin = std::min(s.margin, value);
        }
        s.pass = s.margin > tolerance;
        if (!s.pass && (!result.nearest_failure || s.margin > result.samples[*result.nearest_failure].margin))
            result.nearest_failure = result.samples.size();
        result.samples.push_back(std::move(s));
    }

    Report& rep = result.report;
    rep.lemma = "polydisc";
    rep.seed = seed;
    rep.add("sigma-inside-cone", true, sigma.to_string() + " inside " + c.to_string());
    std::size_t failures = 0;
    for (const auto& s : result.samples)
        if (!s.pass) ++failures;
    std::ostringstream witness;
    witness << std::setprecision(17) << failures << " of " << samples << " samples outside at radius " << radius;
    if (result.nearest_failure) {
        const auto& s = result.samples[*result.nearest_failure];
        witness << "; nearest failure sample " << s.id << " margin " << s.margin;
    }
    rep.add("samples-pass", failures == 0, witness.str());
    std::ostringstream cert;
    cert << std::setprecision(17) << "certified radius " << result.certified_radius;
    rep.add("radius-certified", radius < result.certified_radius, cert.str());
    return result;
}

// --- isogenies -------------------------------------------------------------------------------

IsogenyQuotient quotient_by_isogeny(const TorusChartModel& m, const IntegerLattice& larger) {
    const std::size_t r = m.rank();
    if (larger.ambient_rank() != r || !larger.is_full_rank())
        throw NotFiniteIndex("overlattice must be full rank in the same ambient space");
    std::vector<IntVector> coords;
    for (const auto& b : m.cocharacter_lattice().basis_vectors()) {
        auto c = larger.coordinates(b);
        if (!c) throw NotFiniteIndex("lattice vector " + to_string(b) + " is not in the overlattice");
        coords.push_back(*c);
    }
    const SmithNormalForm snf = smith_normal_form(IntegerMatrix::from_columns(coords, r));
    const IntegerMatrix generators = larger.basis() * integer_inverse(snf.left);

    IsogenyQuotient q{TorusChartModel(larger, m.chart_cone()), {}, {}, {}};
    IntVector orders;
    for (std::size_t i = 0; i < r; ++i) {
        const Integer d = abs(snf.diagonal[i]);
        orders.push_back(d);
        if (d == 1) continue;
        const IntVector k = generators.column(i);
        q.kernel_generators.push_back(k);
        q.action.push_back(translation_exponents(m, to_rational(k)));
    }
    q.kernel = FiniteAbelianGroup::from_cyclic_orders(orders);
    return q;
}

std::vector<Rational> translation_exponents(const TorusChartModel& m, const RatVector& k) {
    if (k.size() != m.rank()) throw DimensionMismatch("translation has the wrong length");
    const RatVector local = m.lattice_coordinates(k);
    std::vector<Rational> out;
    for (const auto& g : m.monoid_generators()) out.push_back(fractional_part(dot(g, local)));
    return out;
}

std::string root_of_unity_string(const Rational& a) {
    const Rational f = fractional_part(a);
    if (f == 0) return "1";
    return "zeta_" + f.get_den().get_str() + "^" + f.get_num().get_str();
}

}  // namespace conefort
