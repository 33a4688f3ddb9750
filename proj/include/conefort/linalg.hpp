#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conefort/matrix.hpp"

namespace conefort {

// --- vectors ---------------------------------------------------------------

RatVector to_rational(const IntVector& v);
RationalMatrix to_rational(const IntegerMatrix& m);

Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const IntVector& a, const RatVector& b);

bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

/// gcd of the entries (0 for the zero vector).
Integer content(const IntVector& v);

/// Positive rescaling of `v` to a primitive integer vector; the zero vector maps to zero.
IntVector primitive(const RatVector& v);
IntVector primitive(const IntVector& v);

/// Lexicographic comparison, used for canonical orderings.
bool lex_less(const IntVector& a, const IntVector& b);

std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

// --- elimination -----------------------------------------------------------

struct RowEchelon {
    RationalMatrix reduced;            ///< reduced row echelon form, zero rows removed
    std::vector<std::size_t> pivots;   ///< pivot column of each row
};

RowEchelon rref(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);

/// Basis of {x : m x = 0}; one vector per free column, in RREF-derived canonical order.
std::vector<RatVector> kernel(const RationalMatrix& m);

/// Canonical integer basis of a subspace: RREF of the spanning rows, each row made primitive.
std::vector<IntVector> canonical_subspace_basis(const std::vector<RatVector>& spanning, std::size_t dim);
std::vector<IntVector> canonical_subspace_basis(const std::vector<IntVector>& spanning, std::size_t dim);

Rational determinant(const RationalMatrix& m);
/// Fraction-free Bareiss elimination.
Integer determinant(const IntegerMatrix& m);

/// Throws SingularMatrix when `m` is not invertible.
RationalMatrix inverse(const RationalMatrix& m);

/// Some x with a x = b, or nullopt when the system is inconsistent.
std::optional<RatVector> solve_rational(const RationalMatrix& a, const RatVector& b);

// --- integer normal forms --------------------------------------------------

struct SmithNormalForm {
    IntVector diagonal;   ///< min(rows, cols) entries, d1 | d2 | ..., trailing zeros for rank deficiency
    IntegerMatrix left;   ///< unimodular, rows x rows
    IntegerMatrix right;  ///< unimodular, cols x cols
};

/// left * m * right = diag(diagonal). Pivot: smallest nonzero |entry| of the active block,
/// ties broken by lowest (row, col).
SmithNormalForm smith_normal_form(const IntegerMatrix& m);

/// Row-style Hermite normal form of the row lattice; zero rows dropped, pivots positive,
/// entries above a pivot reduced into [0, pivot).
IntegerMatrix row_hermite_normal_form(const IntegerMatrix& m);

/// Column Hermite normal form: canonical basis (as columns) of the lattice spanned by the columns.
IntegerMatrix column_hermite_normal_form(const IntegerMatrix& m);

}  // namespace conefort
