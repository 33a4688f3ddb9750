#include "conefort/cone.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace conefort {

namespace {

std::vector<RatVector> rationals(const std::vector<IntVector>& vs) {
    std::vector<RatVector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(to_rational(v));
    return out;
}

void check_lengths(std::size_t n, const std::vector<RatVector>& vs, const char* what) {
    for (const auto& v : vs)
        if (v.size() != n)
            throw DimensionMismatch(std::string(what) + " of length " + std::to_string(v.size()) +
                                    " in ambient rank " + std::to_string(n));
}

void sort_unique(std::vector<IntVector>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

std::size_t rank_of_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return rank(to_rational(IntegerMatrix::from_rows(rows, cols)));
}

struct Pointed {
    std::vector<IntVector> rays;       // projected off the lineality space, primitive
    std::vector<IntVector> lineality;  // canonical basis
};

// Generators of {x : a.x >= 0 (a in geq), e.x = 0 (e in eq)}.
Pointed solve_h_to_v(std::size_t n, const std::vector<RatVector>& geq, const std::vector<RatVector>& eq) {
    Pointed out;
    std::vector<RatVector> all = geq;
    all.insert(all.end(), eq.begin(), eq.end());
    out.lineality = canonical_subspace_basis(kernel(RationalMatrix::from_rows(all, n)), n);

    // parametrize the solution space of the equations: x = k z
    std::vector<RatVector> kcols = kernel(RationalMatrix::from_rows(eq, n));
    if (kcols.empty() || geq.empty()) return out;
    RationalMatrix k = RationalMatrix::from_columns(kcols, n);
    RationalMatrix ak = RationalMatrix::from_rows(geq, n) * k;
    RowEchelon e = rref(ak);
    if (e.pivots.empty()) return out;
    // y-coordinates on the row space of ak, where the cone is pointed
    RationalMatrix ut = e.reduced.transpose();
    RationalMatrix basis = k * ut;
    for (const auto& y : pointed_extreme_rays(ak * ut)) {
        RatVector x = basis * to_rational(y);
        IntVector p = primitive(project_off(x, out.lineality));
        if (!is_zero(p)) out.rays.push_back(std::move(p));
    }
    sort_unique(out.rays);
    return out;
}

}  // namespace

RatVector project_off(const RatVector& v, const std::vector<IntVector>& basis) {
    if (basis.empty()) return v;
    const std::size_t k = basis.size();
    RationalMatrix gram(k, k);
    RatVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = dot(basis[i], v);
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = Rational(dot(basis[i], basis[j]));
    }
    auto c = solve_rational(gram, rhs);
    RatVector out = v;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[j] -= (*c)[i] * basis[i][j];
    return out;
}

std::vector<IntVector> pointed_extreme_rays(const RationalMatrix& m) {
    const std::size_t r = m.cols();
    if (r == 0) return {};
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        IntVector row = primitive(m.row(i));
        if (!is_zero(row)) rows.push_back(std::move(row));
    }

    // initial simplicial cone from r independent rows
    std::vector<std::size_t> chosen;
    std::vector<IntVector> chosen_rows;
    for (std::size_t i = 0; i < rows.size() && chosen.size() < r; ++i) {
        chosen_rows.push_back(rows[i]);
        if (rank_of_rows(chosen_rows, r) == chosen_rows.size())
            chosen.push_back(i);
        else
            chosen_rows.pop_back();
    }
    if (chosen.size() != r) throw SingularMatrix("pointed_extreme_rays: constraint matrix is not of full column rank");

    RationalMatrix binv = inverse(to_rational(IntegerMatrix::from_rows(chosen_rows, r)));
    std::vector<IntVector> rays;
    for (std::size_t j = 0; j < r; ++j) rays.push_back(primitive(binv.column(j)));

    std::vector<std::size_t> processed = chosen;
    std::vector<bool> used(rows.size(), false);
    for (auto i : chosen) used[i] = true;

    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        if (used[idx]) continue;
        const IntVector& a = rows[idx];
        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<IntVector> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i]);
            if (val[i] > 0) pos.push_back(i);
            if (val[i] < 0) neg.push_back(i);
            if (val[i] >= 0) next.push_back(rays[i]);
        }
        if (!neg.empty() && !pos.empty() && r >= 2) {
            std::vector<std::vector<bool>> tight(rays.size(), std::vector<bool>(processed.size()));
            for (std::size_t i = 0; i < rays.size(); ++i)
                for (std::size_t q = 0; q < processed.size(); ++q) tight[i][q] = dot(rows[processed[q]], rays[i]) == 0;
            for (auto p : pos)
                for (auto n : neg) {
                    std::vector<IntVector> common;
                    for (std::size_t q = 0; q < processed.size(); ++q)
                        if (tight[p][q] && tight[n][q]) common.push_back(rows[processed[q]]);
                    if (common.size() < r - 2 || rank_of_rows(common, r) != r - 2) continue;
                    IntVector combo(r);
                    for (std::size_t j = 0; j < r; ++j) combo[j] = val[p] * rays[n][j] - val[n] * rays[p][j];
                    next.push_back(primitive(combo));
                }
        }
        rays = std::move(next);
        sort_unique(rays);
        processed.push_back(idx);
        used[idx] = true;
    }
    return rays;
}

Cone Cone::from_rays(std::size_t ambient_rank, const std::vector<RatVector>& input) {
    check_lengths(ambient_rank, input, "ray");
    std::vector<RatVector> gens;
    for (const auto& g : input)
        if (!is_zero(g)) gens.push_back(g);

    Cone c;
    c.ambient_rank_ = ambient_rank;
    c.equations_ = canonical_subspace_basis(kernel(RationalMatrix::from_rows(gens, ambient_rank)), ambient_rank);
    if (gens.empty()) return c;

    // facets are the extreme rays of the polar cone, taken inside the span of the cone
    c.facets_ = solve_h_to_v(ambient_rank, gens, {}).rays;

    std::vector<RatVector> zero_set = rationals(c.facets_);
    for (const auto& e : c.equations_) zero_set.push_back(to_rational(e));
    c.lineality_ = canonical_subspace_basis(kernel(RationalMatrix::from_rows(zero_set, ambient_rank)), ambient_rank);

    const std::size_t ray_rank = ambient_rank - c.lineality_.size() - 1;
    for (const auto& g : gens) {
        IntVector p = primitive(project_off(g, c.lineality_));
        if (is_zero(p)) continue;
        std::vector<IntVector> tight = c.equations_;
        for (const auto& f : c.facets_)
            if (dot(f, p) == 0) tight.push_back(f);
        if (rank_of_rows(tight, ambient_rank) == ray_rank) c.rays_.push_back(std::move(p));
    }
    sort_unique(c.rays_);
    return c;
}

Cone Cone::from_rays(std::size_t ambient_rank, const std::vector<IntVector>& rays) {
    return from_rays(ambient_rank, rationals(rays));
}

Cone Cone::from_inequalities(std::size_t ambient_rank, const std::vector<RatVector>& geq,
                             const std::vector<RatVector>& eq) {
    check_lengths(ambient_rank, geq, "inequality");
    check_lengths(ambient_rank, eq, "equation");
    Pointed p = solve_h_to_v(ambient_rank, geq, eq);
    std::vector<IntVector> gens = p.rays;
    for (const auto& l : p.lineality) {
        gens.push_back(l);
        IntVector neg(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
        gens.push_back(std::move(neg));
    }
    return from_rays(ambient_rank, gens);
}

Cone Cone::from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& geq,
                             const std::vector<IntVector>& eq) {
    return from_inequalities(ambient_rank, rationals(geq), rationals(eq));
}

Cone Cone::zero(std::size_t ambient_rank) { return from_rays(ambient_rank, std::vector<IntVector>{}); }

Cone Cone::full(std::size_t ambient_rank) { return from_inequalities(ambient_rank, std::vector<IntVector>{}); }

std::vector<IntVector> Cone::generators() const {
    std::vector<IntVector> out = rays_;
    for (const auto& l : lineality_) {
        out.push_back(l);
        IntVector neg(l.size());
        for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
        out.push_back(std::move(neg));
    }
    return out;
}

std::vector<IntVector> Cone::inequalities() const {
    std::vector<IntVector> out = facets_;
    for (const auto& e : equations_) {
        out.push_back(e);
        IntVector neg(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) neg[i] = -e[i];
        out.push_back(std::move(neg));
    }
    return out;
}

Cone Cone::with_twist(int twist) const {
    Cone c = *this;
    c.twist_ = twist;
    return c;
}

bool Cone::contains(const RatVector& v, Strictness mode) const {
    if (v.size() != ambient_rank_) throw DimensionMismatch("point length differs from cone ambient rank");
    for (const auto& e : equations_)
        if (dot(e, v) != 0) return false;
    for (const auto& f : facets_) {
        Rational s = dot(f, v);
        if (s < 0 || (mode == Strictness::Interior && s == 0)) return false;
    }
    return true;
}

bool Cone::contains(const IntVector& v, Strictness mode) const { return contains(to_rational(v), mode); }

bool Cone::contains(const Cone& other) const {
    if (other.ambient_rank_ != ambient_rank_) throw DimensionMismatch("cones live in different ambient ranks");
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

IntVector Cone::interior_point() const {
    IntVector s(ambient_rank_, Integer(0));
    for (const auto& r : rays_)
        for (std::size_t i = 0; i < ambient_rank_; ++i) s[i] += r[i];
    return s;
}

Cone Cone::negated() const {
    std::vector<IntVector> gens = generators();
    for (auto& g : gens)
        for (auto& x : g) x = -x;
    return from_rays(ambient_rank_, gens).with_twist(twist_);
}

Cone Cone::image(const RationalMatrix& m) const {
    if (m.cols() != ambient_rank_) throw DimensionMismatch("linear map source differs from cone ambient rank");
    std::vector<RatVector> gens;
    for (const auto& g : generators()) gens.push_back(m * to_rational(g));
    return from_rays(m.rows(), gens).with_twist(twist_);
}

Cone Cone::preimage(const RationalMatrix& m) const {
    if (m.rows() != ambient_rank_) throw DimensionMismatch("linear map target differs from cone ambient rank");
    RationalMatrix mt = m.transpose();
    std::vector<RatVector> geq, eq;
    for (const auto& f : facets_) geq.push_back(mt * to_rational(f));
    for (const auto& e : equations_) eq.push_back(mt * to_rational(e));
    return from_inequalities(m.cols(), geq, eq).with_twist(twist_);
}

std::string Cone::to_string() const {
    std::ostringstream os;
    os << "cone(rank " << ambient_rank_ << "; rays";
    for (const auto& r : rays_) os << ' ' << conefort::to_string(r);
    if (!lineality_.empty()) {
        os << "; lineality";
        for (const auto& l : lineality_) os << ' ' << conefort::to_string(l);
    }
    os << ')';
    return os.str();
}

bool operator<(const Cone& a, const Cone& b) {
    auto key = [](const Cone& c) {
        return std::tie(c.ambient_rank_, c.twist_, c.rays_, c.lineality_, c.facets_, c.equations_);
    };
    std::size_t da = a.dimension(), db = b.dimension();
    if (da != db) return da < db;
    return key(a) < key(b);
}

Cone dual(const Cone& c) {
    return Cone::from_rays(c.ambient_rank(), c.inequalities()).with_twist(-c.twist());
}

std::vector<Cone> faces(const Cone& c) {
    const auto& rays = c.rays();
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> queue;
    std::vector<std::size_t> all(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) all[i] = i;
    seen.insert(all);
    queue.push_back(all);
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& f : c.facets()) {
            std::vector<std::size_t> sub;
            for (auto i : queue[q])
                if (dot(f, rays[i]) == 0) sub.push_back(i);
            if (seen.insert(sub).second) queue.push_back(sub);
        }
    }
    std::vector<Cone> out;
    for (const auto& subset : queue) {
        std::vector<IntVector> gens;
        for (auto i : subset) gens.push_back(rays[i]);
        for (const auto& l : c.lineality_basis()) {
            gens.push_back(l);
            IntVector neg(l.size());
            for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
            gens.push_back(std::move(neg));
        }
        out.push_back(Cone::from_rays(c.ambient_rank(), gens).with_twist(c.twist()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_face(const Cone& face, const Cone& c) {
    for (const auto& f : faces(c))
        if (f == face) return true;
    return false;
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw DimensionMismatch("cones live in different ambient ranks");
    std::vector<IntVector> geq = a.inequalities();
    for (const auto& f : b.inequalities()) geq.push_back(f);
    return Cone::from_inequalities(a.ambient_rank(), geq).with_twist(a.twist());
}

bool is_strongly_convex(const Cone& c) { return c.lineality_rank() == 0; }

bool is_simplicial(const Cone& c) {
    return is_strongly_convex(c) && rank_of_rows(c.rays(), c.ambient_rank()) == c.rays().size();
}

bool is_smooth(const Cone& c, const IntegerLattice& lattice) {
    if (!lattice.is_full_rank()) throw InvalidRank("smoothness needs a full-rank lattice");
    if (lattice.ambient_rank() != c.ambient_rank()) throw DimensionMismatch("lattice and cone ambient ranks differ");
    if (!is_simplicial(c)) return false;
    if (c.rays().empty()) return true;
    std::vector<IntVector> coords;
    for (const auto& r : c.rays()) coords.push_back(primitive(*lattice.rational_coordinates(to_rational(r))));
    IntegerMatrix m = IntegerMatrix::from_columns(coords, c.ambient_rank());
    for (const auto& d : smith_normal_form(m).diagonal)
        if (d != 1) return false;
    return true;
}

bool is_smooth(const Cone& c) { return is_smooth(c, IntegerLattice::standard(c.ambient_rank())); }

bool is_top_dimensional(const Cone& c) { return c.dimension() == c.ambient_rank(); }

}  // namespace conefort
