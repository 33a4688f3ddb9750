#include "conefort/lattice.hpp"

#include <sstream>

namespace conefort {

IntegerLattice IntegerLattice::from_generators(const IntegerMatrix& generators) {
    IntegerLattice l;
    l.ambient_rank_ = generators.rows();
    l.basis_ = column_hermite_normal_form(generators);
    return l;
}

IntegerLattice IntegerLattice::from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
    for (const auto& g : generators)
        if (g.size() != ambient_rank) throw DimensionMismatch("lattice generator has wrong length");
    return from_generators(IntegerMatrix::from_columns(generators, ambient_rank));
}

IntegerLattice IntegerLattice::standard(std::size_t rank) {
    return from_generators(IntegerMatrix::identity(rank));
}

std::optional<RatVector> IntegerLattice::rational_coordinates(const RatVector& v) const {
    if (v.size() != ambient_rank_) throw DimensionMismatch("vector length differs from lattice ambient rank");
    return solve_rational(to_rational(basis_), v);
}

std::optional<IntVector> IntegerLattice::coordinates(const IntVector& v) const {
    auto x = rational_coordinates(to_rational(v));
    if (!x) return std::nullopt;
    IntVector out;
    out.reserve(x->size());
    for (const auto& c : *x) {
        if (c.get_den() != 1) return std::nullopt;
        out.emplace_back(c.get_num());
    }
    return out;
}

IntegerLattice IntegerLattice::scaled(const Integer& factor) const {
    IntegerMatrix b = basis_;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) *= factor;
    return from_generators(b);
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const IntVector& orders, std::size_t free_rank) {
    FiniteAbelianGroup g;
    g.free_rank_ = free_rank;
    IntVector torsion;
    for (const auto& n : orders) {
        if (n < 0) throw Error("cyclic order must be nonnegative");
        if (n == 0)
            ++g.free_rank_;
        else if (n > 1)
            torsion.push_back(n);
    }
    IntegerMatrix d(torsion.size(), torsion.size(), Integer(0));
    for (std::size_t i = 0; i < torsion.size(); ++i) d(i, i) = torsion[i];
    for (const auto& f : smith_normal_form(d).diagonal)
        if (f > 1) g.factors_.push_back(f);
    return g;
}

Integer FiniteAbelianGroup::order() const {
    if (!is_finite()) throw NotFinite("group has positive free rank");
    Integer n = 1;
    for (const auto& f : factors_) n *= f;
    return n;
}

std::string FiniteAbelianGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < free_rank_; ++i) {
        os << (first ? "" : " x ") << "Z";
        first = false;
    }
    for (const auto& f : factors_) {
        os << (first ? "" : " x ") << "Z/" << f;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

bool is_prime(const Integer& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

FiniteAbelianGroup quotient_group(const IntegerLattice& ambient, const IntegerLattice& sub) {
    if (ambient.ambient_rank() != sub.ambient_rank())
        throw DimensionMismatch("lattices live in different ambient ranks");
    std::vector<IntVector> coords;
    for (const auto& g : sub.basis_vectors()) {
        auto c = ambient.coordinates(g);
        if (!c) throw NotASublattice("generator " + to_string(g) + " is not in the ambient lattice");
        coords.push_back(std::move(*c));
    }
    IntegerMatrix a = IntegerMatrix::from_columns(coords, ambient.rank());
    SmithNormalForm snf = smith_normal_form(a);
    IntVector torsion;
    for (const auto& d : snf.diagonal)
        if (d > 1) torsion.push_back(d);
    return FiniteAbelianGroup::from_cyclic_orders(torsion, ambient.rank() - sub.rank());
}

std::size_t p_rank(const FiniteAbelianGroup& g, const Integer& p) {
    if (!g.is_finite()) throw NotFinite("p-rank requested for an infinite group");
    if (!is_prime(p)) throw NotPrime(p.get_str() + " is not prime");
    std::size_t r = 0;
    for (const auto& f : g.invariant_factors())
        if (f % p == 0) ++r;
    return r;
}

}  // namespace conefort
