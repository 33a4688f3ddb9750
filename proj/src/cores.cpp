#include "conefort/cores.hpp"

#include <algorithm>
#include <sstream>

#include "conefort/lp.hpp"
#include "conefort/vector_ops.hpp"

namespace conefort {

// --- extended rationals ----------------------------------------------------

std::string ExtendedRational::to_string() const {
    switch (kind) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "+inf";
        default: return value.get_str();
    }
}

bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    using K = ExtendedRational::Kind;
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.kind == K::Finite && a.value < b.value;
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    using K = ExtendedRational::Kind;
    if ((a.kind == K::PosInf && b.kind == K::NegInf) || (a.kind == K::NegInf && b.kind == K::PosInf))
        throw Error("undefined sum of opposite infinities");
    if (a.kind != K::Finite) return a;
    if (b.kind != K::Finite) return b;
    return ExtendedRational::finite(a.value + b.value);
}

ExtendedRational ExtendedRational::halved() const {
    if (kind != Kind::Finite) return *this;
    return finite(value / 2);
}

// --- open cones --------------------------------------------------------------

OpenCone::OpenCone(Cone closure, std::size_t n, std::size_t m) : closure_(std::move(closure)), n_(n), m_(m) {
    if (closure_.ambient_rank() != n + m)
        throw DimensionMismatch("split " + std::to_string(n) + "+" + std::to_string(m) + " differs from ambient rank " +
                                std::to_string(closure_.ambient_rank()));
    if (!is_top_dimensional(closure_)) throw NotTopDimensional("open cone needs a full-dimensional closure");
}

namespace {

void remove_redundant(std::vector<IntVector>& rows) {
    std::size_t i = 0;
    while (i < rows.size()) {
        std::vector<IntVector> others;
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i) others.push_back(rows[j]);
        bool implied = !others.empty() && lp::conic_combination(others, rows[i]).has_value();
        if (implied)
            rows.erase(rows.begin() + static_cast<long>(i));
        else
            ++i;
    }
}

void normalize_rows(std::vector<IntVector>& rows) {
    std::vector<IntVector> out;
    for (auto& r : rows) {
        IntVector p = primitive(r);
        if (!is_zero(p)) out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    rows = std::move(out);
}

std::string describe(const RatVector& v) { return to_string(v); }

}  // namespace

std::vector<IntVector> fourier_motzkin(const std::vector<IntVector>& geq, std::size_t keep) {
    std::vector<IntVector> rows = geq;
    normalize_rows(rows);
    if (rows.empty()) return {};
    const std::size_t total = rows.front().size();
    if (keep > total) throw DimensionMismatch("cannot keep more coordinates than exist");
    for (std::size_t col = total; col-- > keep;) {
        std::vector<IntVector> next;
        std::vector<const IntVector*> pos, neg;
        for (const auto& r : rows) {
            if (r[col] > 0)
                pos.push_back(&r);
            else if (r[col] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        for (const auto* p : pos)
            for (const auto* q : neg) {
                IntVector combo(total);
                Integer wp = -(*q)[col];
                Integer wq = (*p)[col];
                for (std::size_t j = 0; j < total; ++j) combo[j] = wp * (*p)[j] + wq * (*q)[j];
                next.push_back(std::move(combo));
            }
        normalize_rows(next);
        remove_redundant(next);
        rows = std::move(next);
    }
    for (auto& r : rows) r.resize(keep);
    normalize_rows(rows);
    remove_redundant(rows);
    std::sort(rows.begin(), rows.end());
    return rows;
}

RatVector sample_relative_interior(const Cone& c, SplitMix64& rng) {
    RatVector x(c.ambient_rank(), Rational(0));
    for (const auto& r : c.rays()) {
        long k = rng.uniform(1, 4);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += k * Rational(r[i]);
    }
    for (const auto& l : c.lineality_basis()) {
        long k = rng.uniform(-3, 3);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += k * Rational(l[i]);
    }
    Rational den(rng.uniform(1, 3));
    for (auto& v : x) v /= den;
    return x;
}

OpenProjection project_open(const OpenCone& c, std::size_t drop) {
    const std::size_t rank = c.rank();
    if (drop == 0 || drop >= rank)
        throw DimensionMismatch("projection must drop between 1 and " + std::to_string(rank - 1) + " coordinates");
    const std::size_t keep = rank - drop;
    RationalMatrix proj(keep, rank, Rational(0));
    for (std::size_t i = 0; i < keep; ++i) proj(i, i) = 1;

    OpenProjection out;
    out.image = c.closure().image(proj);
    out.eliminated = fourier_motzkin(c.closure().inequalities(), keep);
    if (out.image.equations().empty())
        out.fm_agrees = out.eliminated == out.image.facets();
    else
        out.fm_agrees = Cone::from_inequalities(keep, out.eliminated) == out.image;
    out.interior_has_preimage = interior_preimage(c, drop, to_rational(out.image.interior_point())).has_value();
    return out;
}

std::optional<RatVector> interior_preimage(const OpenCone& c, std::size_t drop, const RatVector& q) {
    const std::size_t rank = c.rank();
    const std::size_t keep = rank - drop;
    if (q.size() != keep) throw DimensionMismatch("image point has the wrong length");
    std::vector<lp::Constraint> cons;
    for (const auto& f : c.closure().facets()) cons.push_back({to_rational(f), 0, lp::Relation::Greater});
    for (std::size_t i = 0; i < keep; ++i) {
        RatVector e(rank, Rational(0));
        e[i] = 1;
        cons.push_back({e, q[i], lp::Relation::Equal});
    }
    if (c.closure().facets().empty()) {
        RatVector x(rank, Rational(0));
        for (std::size_t i = 0; i < keep; ++i) x[i] = q[i];
        return x;
    }
    return lp::find_point(rank, cons);
}

std::string to_string(SigmaCase c) {
    switch (c) {
        case SigmaCase::A: return "A";
        case SigmaCase::B: return "B";
        default: return "neither";
    }
}

SigmaZero sigma_zero(const OpenCone& c) {
    const std::size_t n = c.n();
    std::vector<IntVector> eq;
    for (std::size_t j = 0; j < c.m(); ++j) {
        IntVector e(c.rank(), Integer(0));
        e[n + j] = 1;
        eq.push_back(std::move(e));
    }
    Cone slice = Cone::from_inequalities(c.rank(), c.closure().inequalities(), eq);
    std::vector<IntVector> gens;
    for (auto g : slice.generators()) {
        g.resize(n);
        gens.push_back(std::move(g));
    }
    SigmaZero out;
    out.closure = Cone::from_rays(n, gens);
    if (n == 0 || out.closure.dimension() < n) return out;
    bool vanishing_facet = false;
    for (const auto& f : c.closure().facets()) {
        IntVector v(f.begin(), f.begin() + static_cast<long>(n));
        if (is_zero(v)) vanishing_facet = true;
    }
    out.tag = vanishing_facet ? SigmaCase::A : SigmaCase::B;
    return out;
}

// --- cores -------------------------------------------------------------------

Core::Core(OpenCone parent, RatVector base) : parent_(std::move(parent)), base_(std::move(base)) {
    if (base_.size() != parent_.rank()) throw DimensionMismatch("core base point has the wrong length");
    if (!parent_.contains(base_)) throw HypothesisViolated("core base point " + to_string(base_) + " is not interior");
}

bool Core::contains(const RatVector& x) const { return parent_.contains(minus(x, base_)); }

std::pair<ExtendedRational, ExtendedRational> line_interval(const Cone& closure, const RatVector& base,
                                                            const RatVector& point, const RatVector& direction) {
    ExtendedRational lower = ExtendedRational::neg_inf();
    ExtendedRational upper = ExtendedRational::pos_inf();
    const RatVector offset = minus(point, base);
    for (const auto& a : closure.facets()) {
        Rational alpha = dot(a, direction);
        Rational beta = dot(a, offset);
        if (alpha == 0) {
            if (beta <= 0) return {ExtendedRational::pos_inf(), ExtendedRational::neg_inf()};
            continue;
        }
        auto bound = ExtendedRational::finite(-beta / alpha);
        if (alpha > 0 && lower < bound) lower = bound;
        if (alpha < 0 && bound < upper) upper = bound;
    }
    return {lower, upper};
}

ExtendedRational core_f(const Core& d, const RatVector& v, const RatVector& z) {
    const auto& c = d.parent();
    if (v.size() != c.n() || z.size() != c.m()) throw DimensionMismatch("core_f arguments do not match the split");
    auto [lower, upper] =
        line_interval(c.closure(), d.base(), concat(v, RatVector(c.m(), Rational(0))), concat(RatVector(c.n(), Rational(0)), z));
    if (!(lower < upper)) return ExtendedRational::pos_inf();
    return lower;
}

// --- verifiers -----------------------------------------------------------------

Report check_lemma51(const OpenCone& c, std::size_t drop, std::size_t samples, std::uint64_t seed) {
    Report rep;
    rep.lemma = "5.1";
    rep.seed = seed;
    SplitMix64 rng(seed);
    OpenProjection p = project_open(c, drop);
    rep.add("fm-equals-projected-rays", p.fm_agrees, p.image.to_string());

    const std::size_t keep = c.rank() - drop;
    bool lifts = true;
    std::string witness = std::to_string(samples) + " interior samples lifted";
    for (std::size_t s = 0; s < samples && lifts; ++s) {
        RatVector q = sample_relative_interior(p.image, rng);
        auto x = interior_preimage(c, drop, q);
        if (!x || !c.contains(*x) || head(*x, keep) != q) {
            lifts = false;
            witness = "no interior preimage for " + describe(q);
        }
    }
    rep.add("interior-preimage", lifts, witness);

    // boundary points of the image have no preimage in the open cone
    bool boundary_ok = true;
    std::string bwitness = "image has no boundary facets";
    if (!p.image.facets().empty()) {
        bwitness = std::to_string(samples) + " boundary samples rejected";
        auto fs = faces(p.image);
        std::vector<Cone> facets;
        for (auto& f : fs)
            if (f.dimension() + 1 == p.image.dimension()) facets.push_back(f);
        for (std::size_t s = 0; s < samples && boundary_ok; ++s) {
            RatVector q = sample_relative_interior(facets[s % facets.size()], rng);
            if (interior_preimage(c, drop, q)) {
                boundary_ok = false;
                bwitness = "boundary point " + describe(q) + " lifted into the open cone";
            }
        }
    }
    rep.add("boundary-has-no-preimage", boundary_ok, bwitness);
    return rep;
}

namespace {

// Picks a rational strictly inside the open interval (lower, upper) intersected with (floor, inf).
std::optional<Rational> pick_inside(ExtendedRational lower, const ExtendedRational& upper, const Rational& floor) {
    if (lower < ExtendedRational::finite(floor)) lower = ExtendedRational::finite(floor);
    if (!(lower < upper)) return std::nullopt;
    if (upper.kind == ExtendedRational::Kind::PosInf) return lower.value + 1;
    return (lower.value + upper.value) / 2;
}

}  // namespace

Report check_lemma52(const Core& d, std::size_t samples, std::uint64_t seed, std::size_t lambdas) {
    const OpenCone& c = d.parent();
    SigmaZero sz = sigma_zero(c);
    if (sz.tag == SigmaCase::Neither)
        throw HypothesisViolated("sigma_zero case " + to_string(sz.tag) + ": neither case A nor case B holds");
    const std::size_t n = c.n(), m = c.m();
    const RatVector zero_n(n, Rational(0)), zero_m(m, Rational(0)), zero_all(n + m, Rational(0));
    const Cone& closure = c.closure();
    const RatVector& b = d.base();

    Report rep;
    rep.lemma = "5.2";
    rep.seed = seed;
    rep.add("case", true, to_string(sz.tag));
    SplitMix64 rng(seed);
    const std::vector<Cone> slice_faces = faces(sz.closure);

    struct Tally {
        bool pass = true;
        std::string witness;
        void fail(std::string w) {
            if (pass) witness = std::move(w);
            pass = false;
        }
    };
    Tally gen_sigma, ray_shift, d_generates, mu_found, d_enterable, decreasing, convex, positive, dichotomy, on_ray;
    Rational largest_mu = 0;

    for (std::size_t s = 0; s < samples; ++s) {
        RatVector x = sample_relative_interior(closure, rng);  // a point of C
        RatVector z0 = tail(x, n);
        RatVector v_sigma = sample_relative_interior(sz.closure, rng);

        // (1) (lambda v_sigma, z0) in C for some lambda > 0
        auto [l1, u1] = line_interval(closure, zero_all, concat(zero_n, z0), concat(v_sigma, zero_m));
        auto lam1 = pick_inside(l1, u1, 0);
        if (!lam1 || !c.contains(concat(scaled(v_sigma, *lam1), z0)))
            gen_sigma.fail("no lambda for v_sigma " + describe(v_sigma) + " at level " + describe(z0));

        // (2) shifting by the closed slice stays in C; D generates C
        RatVector v_closed = sample_relative_interior(slice_faces[rng.next() % slice_faces.size()], rng);
        Rational shift = 1 + ratio(rng.uniform(0, 12), rng.uniform(1, 4));
        if (!c.contains(plus(x, concat(scaled(v_closed, shift), zero_m))))
            ray_shift.fail(describe(x) + " + " + shift.get_str() + " * " + describe(v_closed));
        Rational grow = 1;
        for (const auto& a : closure.facets()) {
            Rational ratio = dot(a, b) / dot(a, x);
            if (ratio > grow) grow = ratio;
        }
        grow += 1;
        if (!d.contains(scaled(x, grow))) d_generates.fail(describe(x) + " scaled by " + grow.get_str());

        // (3) a mu with f(t v', z0) < mu on mu v_sigma + K, K = [-1, 1]^n
        if (lam1) {
            RatVector w1 = scaled(v_sigma, *lam1);
            std::vector<RatVector> box;
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                RatVector corner(n);
                for (std::size_t i = 0; i < n; ++i) corner[i] = (mask >> i & 1) ? 1 : -1;
                box.push_back(corner);
            }
            for (int k = 0; k < 3; ++k) {
                RatVector inner(n);
                for (auto& e : inner) e = ratio(rng.uniform(-8, 8), 8);
                box.push_back(inner);
            }
            const std::vector<Rational> ts{Rational(1), Rational(3, 2), Rational(2), Rational(5), Rational(100)};
            Rational mu = 1;
            bool found = false;
            for (int doubling = 0; doubling < 48 && !found; ++doubling, mu *= 2) {
                found = true;
                for (const auto& k : box)
                    for (const auto& t : ts)
                        if (found && !(core_f(d, scaled(plus(scaled(w1, mu), k), t), z0) < ExtendedRational::finite(mu)))
                            found = false;
                if (found) break;
            }
            if (!found)
                mu_found.fail("no mu up to 2^48 for v_sigma " + describe(w1));
            else if (mu > largest_mu)
                largest_mu = mu;
        }

        // (4) from a point of D at level z0, the sigma directions enter D
        RatVector dpt = plus(b, x);
        RatVector dz = tail(dpt, n);
        auto [l4, u4] = line_interval(closure, b, concat(zero_n, dz), concat(v_sigma, zero_m));
        auto lam4 = pick_inside(l4, u4, 0);
        if (!lam4 || !d.contains(concat(scaled(v_sigma, *lam4), dz))) {
            d_enterable.fail("no lambda for v_sigma " + describe(v_sigma) + " at level " + describe(dz));
            continue;
        }

        // (5) f along the ray through w = lam4 v_sigma at level dz
        RatVector w = scaled(v_sigma, *lam4);
        std::vector<Rational> ls{Rational(1)};
        while (ls.size() < lambdas) {
            Rational l = 1 + ratio(rng.uniform(1, 60), rng.uniform(1, 6));
            if (std::find(ls.begin(), ls.end(), l) == ls.end()) ls.push_back(l);
        }
        std::sort(ls.begin(), ls.end());
        std::vector<ExtendedRational> fs;
        for (const auto& l : ls) {
            fs.push_back(core_f(d, scaled(w, l), dz));
            if (!d.contains(concat(scaled(w, l), dz))) on_ray.fail("lambda " + l.get_str() + " leaves D on " + describe(w));
        }
        std::size_t neg_inf = 0;
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (fs[i].kind == ExtendedRational::Kind::NegInf) ++neg_inf;
            if (sz.tag == SigmaCase::A && !(ExtendedRational::finite(0) < fs[i]))
                positive.fail("f = " + fs[i].to_string() + " at lambda " + ls[i].get_str());
            if (i + 1 < ls.size() && !(fs[i + 1] <= fs[i]))
                decreasing.fail("f(" + ls[i + 1].get_str() + ") = " + fs[i + 1].to_string() + " > f(" + ls[i].get_str() +
                                ") = " + fs[i].to_string());
            for (std::size_t j : {i + 1, std::size_t{0}}) {
                if (j >= ls.size() || j == i) continue;
                Rational mid = (ls[i] + ls[j]) / 2;
                ExtendedRational fm = core_f(d, scaled(w, mid), dz);
                if (!(fm <= (fs[i] + fs[j]).halved()))
                    convex.fail("midpoint " + mid.get_str() + " of " + ls[i].get_str() + ", " + ls[j].get_str());
            }
        }
        if (sz.tag == SigmaCase::B && neg_inf != 0 && neg_inf != ls.size())
            dichotomy.fail(std::to_string(neg_inf) + " of " + std::to_string(ls.size()) + " values are -inf on " +
                           describe(w));
    }

    auto summary = [&](Tally& t, const std::string& ok) { return t.pass ? ok : t.witness; };
    const std::string per = std::to_string(samples) + " samples";
    rep.add("sigma-generation", gen_sigma.pass, summary(gen_sigma, per));
    rep.add("closed-slice-shift", ray_shift.pass, summary(ray_shift, per));
    rep.add("core-generates-cone", d_generates.pass, summary(d_generates, per));
    rep.add("bounded-f-mu", mu_found.pass, summary(mu_found, "largest mu " + largest_mu.get_str()));
    rep.add("core-sigma-generation", d_enterable.pass, summary(d_enterable, per));
    rep.add("ray-stays-in-core", on_ray.pass, summary(on_ray, per));
    rep.add("f-decreasing", decreasing.pass, summary(decreasing, per + " x " + std::to_string(lambdas) + " lambdas"));
    rep.add("f-midpoint-convex", convex.pass, summary(convex, per + " x " + std::to_string(lambdas) + " lambdas"));
    if (sz.tag == SigmaCase::A) rep.add("f-positive", positive.pass, summary(positive, per));
    if (sz.tag == SigmaCase::B) {
        rep.add("f-neg-inf-dichotomy", dichotomy.pass, summary(dichotomy, per));
        // the z-projection of C is everything: eliminating the v-coordinates leaves no constraint
        std::vector<IntVector> swapped;
        for (const auto& f : closure.inequalities()) {
            IntVector r(f.begin() + static_cast<long>(n), f.end());
            r.insert(r.end(), f.begin(), f.begin() + static_cast<long>(n));
            swapped.push_back(std::move(r));
        }
        auto rest = fourier_motzkin(swapped, m);
        rep.add("case-b-projection-total", rest.empty(), rest.empty() ? "no constraint survives" : to_string(rest.front()));
    }
    return rep;
}

Cone random_full_cone(SplitMix64& rng, std::size_t rank, long bound) {
    if (rank == 0) throw DimensionMismatch("random cones need positive rank");
    for (;;) {
        std::vector<IntVector> rays;
        const auto count = rank + static_cast<std::size_t>(rng.uniform(1, 3));
        for (std::size_t i = 0; i < count; ++i) {
            IntVector r(rank);
            for (auto& x : r) x = rng.uniform(-bound, bound);
            rays.push_back(std::move(r));
        }
        Cone c = Cone::from_rays(rank, rays);
        if (is_top_dimensional(c)) return c;
    }
}

Core random_core(SplitMix64& rng, std::size_t n, std::size_t m, SigmaCase wanted) {
    if (wanted == SigmaCase::Neither) throw NotSupported("random cores are generated for cases A and B only");
    for (;;) {
        std::vector<IntVector> rays;
        for (std::size_t i = 0; i < n; ++i) {
            IntVector r(n + m, Integer(0));
            for (std::size_t j = 0; j < n; ++j) r[j] = rng.uniform(i == j ? 1 : 0, i == j ? 3 : 1);
            rays.push_back(std::move(r));
        }
        std::size_t extra = m + 1 + static_cast<std::size_t>(rng.uniform(0, 1));
        for (std::size_t k = 0; k < extra; ++k) {
            IntVector r(n + m);
            for (std::size_t j = 0; j < n; ++j) r[j] = rng.uniform(-2, 3);
            for (std::size_t j = n; j < n + m; ++j) r[j] = rng.uniform(-3, 3);
            if (wanted == SigmaCase::A) r[n] = rng.uniform(1, 3);
            rays.push_back(r);
            if (wanted == SigmaCase::B) {
                for (std::size_t j = n; j < n + m; ++j) r[j] = -r[j];
                rays.push_back(std::move(r));
            }
        }
        Cone closure = Cone::from_rays(n + m, rays);
        if (!is_top_dimensional(closure)) continue;
        OpenCone open(closure, n, m);
        if (sigma_zero(open).tag != wanted) continue;
        RatVector base = sample_relative_interior(closure, rng);
        return Core(open, base);
    }
}

}  // namespace conefort
