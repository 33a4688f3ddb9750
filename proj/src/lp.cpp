#include "conefort/lp.hpp"

#include <algorithm>

namespace conefort::lp {

namespace {

// Tableau rows 0..m-1 are constraints, row m is the reduced-cost row; the last column is the rhs.
struct Tableau {
    RationalMatrix t;
    std::vector<std::size_t> basis;
    std::size_t m = 0;
    std::size_t rhs = 0;

    void pivot(std::size_t r, std::size_t c) {
        Rational inv = 1 / t(r, c);
        for (std::size_t j = 0; j <= rhs; ++j) t(r, j) *= inv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == r || t(i, c) == 0) continue;
            Rational f = -t(i, c);
            t.add_row_multiple(i, r, f);
        }
        basis[r] = c;
    }

    // Bland's rule over columns [0, ncols). Returns false when unbounded.
    bool optimize(std::size_t ncols) {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j)
                if (t(m, j) < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) return true;
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t(i, enter) <= 0) continue;
                Rational ratio = t(i, rhs) / t(i, enter);
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }

    void set_objective(const RatVector& cost, std::size_t ncols) {
        for (std::size_t j = 0; j <= rhs; ++j) t(m, j) = 0;
        for (std::size_t j = 0; j < ncols; ++j) t(m, j) = -cost[j];
        for (std::size_t i = 0; i < m; ++i) {
            const Rational& cb = basis[i] < ncols ? cost[basis[i]] : Rational(0);
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= rhs; ++j) t(m, j) += cb * t(i, j);
        }
    }
};

}  // namespace

Result maximize(const RationalMatrix& a, const RatVector& b, const RatVector& c) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n) throw DimensionMismatch("lp::maximize shape mismatch");

    Tableau tab;
    tab.m = m;
    tab.rhs = n + m;
    tab.t = RationalMatrix(m + 1, n + m + 1, Rational(0));
    tab.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j) tab.t(i, j) = flip ? Rational(-a(i, j)) : a(i, j);
        tab.t(i, tab.rhs) = flip ? Rational(-b[i]) : b[i];
        tab.t(i, n + i) = 1;
        tab.basis[i] = n + i;
    }

    // phase 1: maximize -(sum of artificials)
    RatVector phase1(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
    tab.set_objective(phase1, n + m);
    tab.optimize(n + m);
    if (tab.t(m, tab.rhs) != 0) return {Status::Infeasible, {}, 0};

    // drive remaining artificials out of the basis; rows that cannot pivot are redundant
    std::vector<bool> redundant(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (tab.basis[i] < n) continue;
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (tab.t(i, j) != 0) {
                col = j;
                break;
            }
        if (col == n)
            redundant[i] = true;
        else
            tab.pivot(i, col);
    }
    if (std::find(redundant.begin(), redundant.end(), true) != redundant.end()) {
        Tableau reduced;
        std::size_t kept = 0;
        for (bool r : redundant) kept += r ? 0 : 1;
        reduced.m = kept;
        reduced.rhs = tab.rhs;
        reduced.t = RationalMatrix(kept + 1, tab.rhs + 1, Rational(0));
        for (std::size_t i = 0, k = 0; i < m; ++i) {
            if (redundant[i]) continue;
            for (std::size_t j = 0; j <= tab.rhs; ++j) reduced.t(k, j) = tab.t(i, j);
            reduced.basis.push_back(tab.basis[i]);
            ++k;
        }
        tab = std::move(reduced);
    }

    // phase 2 over the original columns only
    tab.set_objective(c, n);
    if (!tab.optimize(n)) return {Status::Unbounded, {}, 0};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.m; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t(i, tab.rhs);
    res.value = dot(c, res.x);
    return res;
}

std::optional<RatVector> find_point(std::size_t dim, const std::vector<Constraint>& constraints) {
    std::size_t slacks = 0;
    bool strict = false;
    for (const auto& k : constraints) {
        if (k.coeffs.size() != dim) throw DimensionMismatch("constraint length differs from dimension");
        if (k.relation != Relation::Equal) ++slacks;
        if (k.relation == Relation::Greater) strict = true;
    }
    // columns: x+ (dim), x- (dim), slacks, [margin t, slack u]
    const std::size_t margin = 2 * dim + slacks;
    const std::size_t ncols = margin + (strict ? 2 : 0);
    const std::size_t nrows = constraints.size() + (strict ? 1 : 0);
    RationalMatrix a(nrows, ncols, Rational(0));
    RatVector b(nrows, Rational(0));
    RatVector c(ncols, Rational(0));
    std::size_t s = 2 * dim;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto& k = constraints[i];
        for (std::size_t j = 0; j < dim; ++j) {
            a(i, j) = k.coeffs[j];
            a(i, dim + j) = -k.coeffs[j];
        }
        if (k.relation != Relation::Equal) a(i, s++) = -1;
        if (k.relation == Relation::Greater) a(i, margin) = -1;
        b[i] = k.rhs;
    }
    if (strict) {
        a(nrows - 1, margin) = 1;
        a(nrows - 1, margin + 1) = 1;
        b[nrows - 1] = 1;
        c[margin] = 1;
    }
    Result r = maximize(a, b, c);
    if (r.status != Status::Optimal) return std::nullopt;
    if (strict && r.x[margin] <= 0) return std::nullopt;
    RatVector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = r.x[j] - r.x[dim + j];
    return x;
}

std::optional<RatVector> conic_combination(const std::vector<RatVector>& generators, const RatVector& target) {
    const std::size_t d = target.size();
    RationalMatrix a(d, generators.size(), Rational(0));
    for (std::size_t j = 0; j < generators.size(); ++j) {
        if (generators[j].size() != d) throw DimensionMismatch("generator length differs from target");
        for (std::size_t i = 0; i < d; ++i) a(i, j) = generators[j][i];
    }
    Result r = maximize(a, target, RatVector(generators.size(), Rational(0)));
    if (r.status != Status::Optimal) return std::nullopt;
    return r.x;
}

std::optional<RatVector> conic_combination(const std::vector<IntVector>& generators, const IntVector& target) {
    std::vector<RatVector> g;
    g.reserve(generators.size());
    for (const auto& v : generators) g.push_back(to_rational(v));
    return conic_combination(g, to_rational(target));
}

}  // namespace conefort::lp
