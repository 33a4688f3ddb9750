#include "conefort/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace conefort {

RatVector to_rational(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IntVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Integer content(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

IntVector primitive(const IntVector& v) {
    Integer g = content(v);
    if (g == 0) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

IntVector primitive(const RatVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    IntVector scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        scaled[i] = s.get_num();
    }
    return primitive(scaled);
}

bool lex_less(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string to_string(const RatVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

RowEchelon rref(const RationalMatrix& m) {
    RationalMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        Rational inv = 1 / a(r, c);
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = -a(i, c);
            a.add_row_multiple(i, r, f);
        }
        pivots.push_back(c);
        ++r;
    }
    RationalMatrix reduced(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
    return {std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }
std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

std::vector<RatVector> kernel(const RationalMatrix& m) {
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<IntVector> canonical_subspace_basis(const std::vector<RatVector>& spanning, std::size_t dim) {
    RowEchelon e = rref(RationalMatrix::from_rows(spanning, dim));
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < e.reduced.rows(); ++i) out.push_back(primitive(e.reduced.row(i)));
    return out;
}

std::vector<IntVector> canonical_subspace_basis(const std::vector<IntVector>& spanning, std::size_t dim) {
    std::vector<RatVector> rows;
    rows.reserve(spanning.size());
    for (const auto& v : spanning) rows.push_back(to_rational(v));
    return canonical_subspace_basis(rows, dim);
}

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    RationalMatrix a = m;
    Rational det = 1;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rational f = -a(i, c) / a(c, c);
            a.add_row_multiple(i, c, f);
        }
    }
    return det;
}

Integer determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::optional<RatVector> solve_rational(const RationalMatrix& a, const RatVector& b) {
    if (a.rows() != b.size()) throw DimensionMismatch("solve_rational: rows != length(b)");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RowEchelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    RatVector x(a.cols(), Rational(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
    return x;
}

namespace {

// Truncating quotient; the remainder has |r| < |b|.
Integer tquot(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer fquot(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithNormalForm smith_normal_form(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    IntegerMatrix left = IntegerMatrix::identity(m.rows());
    IntegerMatrix right = IntegerMatrix::identity(m.cols());
    const std::size_t n = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // pivot: minimal |entry| in the active block, lowest (row, col) on ties
            bool found = false;
            std::size_t pi = 0, pj = 0;
            for (std::size_t i = t; i < a.rows(); ++i)
                for (std::size_t j = t; j < a.cols(); ++j) {
                    if (a(i, j) == 0) continue;
                    if (!found || abs(a(i, j)) < abs(a(pi, pj))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) break;
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_columns(t, pj);
            right.swap_columns(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                Integer q = tquot(a(i, t), a(t, t));
                a.add_row_multiple(i, t, -q);
                left.add_row_multiple(i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                Integer q = tquot(a(t, j), a(t, t));
                a.add_column_multiple(j, t, -q);
                right.add_column_multiple(j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divisible = true;
            for (std::size_t i = t + 1; i < a.rows() && divisible; ++i)
                for (std::size_t j = t + 1; j < a.cols(); ++j) {
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row_multiple(t, i, Integer(1));
                        left.add_row_multiple(t, i, Integer(1));
                        divisible = false;
                        break;
                    }
                }
            if (divisible) break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    IntVector diag(n);
    for (std::size_t t = 0; t < n; ++t) diag[t] = a(t, t);
    return {std::move(diag), std::move(left), std::move(right)};
}

IntegerMatrix row_hermite_normal_form(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        for (;;) {
            std::size_t best = a.rows();
            for (std::size_t i = r; i < a.rows(); ++i) {
                if (a(i, c) == 0) continue;
                if (best == a.rows() || abs(a(i, c)) < abs(a(best, c))) best = i;
            }
            if (best == a.rows()) break;
            a.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < a.rows(); ++i) {
                if (a(i, c) == 0) continue;
                a.add_row_multiple(i, r, -tquot(a(i, c), a(r, c)));
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) a.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = fquot(a(i, c), a(r, c));
            if (q != 0) a.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    IntegerMatrix out(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

IntegerMatrix column_hermite_normal_form(const IntegerMatrix& m) {
    IntegerMatrix h = row_hermite_normal_form(m.transpose()).transpose();
    if (h.cols() == 0) return IntegerMatrix(m.rows(), 0);
    return h;
}

}  // namespace conefort
