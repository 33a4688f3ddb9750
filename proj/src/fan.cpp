#include "conefort/fan.hpp"

#include <algorithm>
#include <functional>

namespace conefort {

Fan::Fan(std::size_t ambient_rank, std::vector<Cone> cones)
    : Fan(ambient_rank, std::move(cones), IntegerLattice::standard(ambient_rank)) {}

Fan::Fan(std::size_t ambient_rank, std::vector<Cone> cones, IntegerLattice lattice)
    : ambient_rank_(ambient_rank), cones_(std::move(cones)), lattice_(std::move(lattice)) {
    if (lattice_.ambient_rank() != ambient_rank_) throw DimensionMismatch("fan lattice has the wrong ambient rank");
    std::sort(cones_.begin(), cones_.end());
    cones_.erase(std::unique(cones_.begin(), cones_.end()), cones_.end());
}

Fan Fan::from_maximal(std::size_t ambient_rank, const std::vector<Cone>& maximal) {
    std::vector<Cone> all;
    for (const auto& c : maximal)
        for (auto& f : faces(c)) all.push_back(std::move(f));
    return Fan(ambient_rank, std::move(all));
}

std::size_t Fan::index_of(const Cone& c) const {
    auto it = std::lower_bound(cones_.begin(), cones_.end(), c);
    if (it != cones_.end() && *it == c) return static_cast<std::size_t>(it - cones_.begin());
    return cones_.size();
}

bool Fan::contains(const Cone& c) const { return index_of(c) != cones_.size(); }

bool Fan::covers(const RatVector& v) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& c) { return c.contains(v); });
}

std::vector<Cone> Fan::maximal_cones() const {
    std::vector<Cone> out;
    for (std::size_t i = 0; i < cones_.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < cones_.size() && maximal; ++j)
            if (i != j && cones_[j].dimension() > cones_[i].dimension() && cones_[j].contains(cones_[i]))
                maximal = false;
        if (maximal) out.push_back(cones_[i]);
    }
    return out;
}

FanReport validate(const Fan& f) {
    FanReport report;
    const auto& cs = f.cones();
    bool ranks_ok = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].ambient_rank() != f.ambient_rank()) {
            report.violations.push_back({"ambient-rank", i, i, cs[i].to_string()});
            ranks_ok = false;
        } else if (!is_strongly_convex(cs[i])) {
            report.violations.push_back({"strongly-convex", i, i, cs[i].to_string()});
        }
    }
    if (!ranks_ok) return report;

    std::vector<std::vector<Cone>> face_lists;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        face_lists.push_back(faces(cs[i]));
        for (const auto& face : face_lists.back())
            if (!f.contains(face))
                report.violations.push_back({"face-closure", i, i, "missing face " + face.to_string()});
    }
    auto in = [](const std::vector<Cone>& list, const Cone& c) {
        return std::binary_search(list.begin(), list.end(), c);
    };
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
            Cone meet = intersect(cs[i], cs[j]);
            if (!in(face_lists[i], meet) || !in(face_lists[j], meet))
                report.violations.push_back({"intersection", i, j, "intersection " + meet.to_string()});
        }
    return report;
}

namespace {

void require_valid(const Fan& f) {
    FanReport r = validate(f);
    if (!r.ok()) {
        const auto& v = r.violations.front();
        throw InvalidFan(v.axiom + " violated by cones " + std::to_string(v.first) + ", " + std::to_string(v.second) +
                         ": " + v.detail);
    }
}

IntVector negate(IntVector v) {
    for (auto& x : v) x = -x;
    return v;
}

}  // namespace

bool is_complete_over(const Fan& f, const SupportRegion& support) {
    require_valid(f);
    const Cone& closed = support.closed_cone;
    const std::size_t n = f.ambient_rank();
    if (closed.ambient_rank() != n) throw DimensionMismatch("support and fan ambient ranks differ");

    // every member inside the support
    for (const auto& c : f.cones()) {
        if (!closed.contains(c)) return false;
        if (support.open_part_only)
            for (const auto& r : c.rays())
                for (const auto& facet : closed.facets())
                    if (dot(facet, r) <= 0) return false;
    }

    // every point of the closed support covered; only members of full dimension in the span matter
    const std::size_t k = closed.dimension();
    std::vector<const Cone*> members;
    std::size_t halfspaces = 0;
    for (const auto& c : f.cones())
        if (c.dimension() == k) {
            members.push_back(&c);
            halfspaces += c.facets().size();
        }
    halfspaces += closed.facets().size();
    const std::size_t cap = std::max<std::size_t>(1, n * halfspaces);

    std::function<bool(const std::vector<IntVector>&, std::size_t, std::size_t)> covered =
        [&](const std::vector<IntVector>& region_ineqs, std::size_t from, std::size_t depth) -> bool {
        if (depth > cap) throw DepthExceeded("completeness splitting exceeded depth " + std::to_string(cap));
        Cone region = Cone::from_inequalities(n, region_ineqs);
        if (region.dimension() < k) return true;
        for (std::size_t i = from; i < members.size(); ++i) {
            const Cone& sigma = *members[i];
            if (intersect(region, sigma).dimension() < k) continue;
            if (sigma.contains(region)) return true;
            const auto& facets = sigma.facets();
            for (std::size_t j = 0; j < facets.size(); ++j) {
                std::vector<IntVector> piece = region_ineqs;
                piece.push_back(negate(facets[j]));
                for (std::size_t l = 0; l < j; ++l) piece.push_back(facets[l]);
                if (!covered(piece, i + 1, depth + 1)) return false;
            }
            return true;
        }
        return false;
    };
    return covered(closed.inequalities(), 0, 0);
}

bool is_smooth(const Fan& f) {
    require_valid(f);
    return std::all_of(f.cones().begin(), f.cones().end(), [&](const Cone& c) { return is_smooth(c, f.lattice()); });
}

bool is_invariant_under(const Fan& f, const std::vector<RationalMatrix>& generators, InvarianceMode mode) {
    for (const auto& g : generators) {
        if (g.rows() != f.ambient_rank() || g.cols() != f.ambient_rank())
            throw DimensionMismatch("generator shape differs from fan ambient rank");
        if (determinant(g) == 0) throw SingularGenerator("symmetry generator has determinant 0");
    }
    for (const auto& g : generators)
        for (const auto& c : f.cones()) {
            Cone image = c.image(g);
            if (f.contains(image)) continue;
            if (mode == InvarianceMode::Truncated && !f.covers(to_rational(image.interior_point()))) continue;
            return false;
        }
    return true;
}

bool refines(const Fan& fine, const Fan& coarse) {
    if (fine.ambient_rank() != coarse.ambient_rank()) throw DimensionMismatch("fans live in different ambient ranks");
    return std::all_of(fine.cones().begin(), fine.cones().end(), [&](const Cone& c) {
        return std::any_of(coarse.cones().begin(), coarse.cones().end(), [&](const Cone& d) { return d.contains(c); });
    });
}

std::vector<Stratum> stratum_index(const Fan& f) {
    require_valid(f);
    std::vector<Stratum> out;
    for (std::size_t i = 0; i < f.cones().size(); ++i) {
        const Cone& c = f.cones()[i];
        out.push_back({c, "O(" + std::to_string(i) + ")", f.ambient_rank() - c.dimension()});
    }
    return out;
}

bool is_open_subset(const Fan& f, const std::vector<Cone>& subset) {
    require_valid(f);
    for (const auto& c : subset)
        if (!f.contains(c)) throw NotSupported("cone " + c.to_string() + " is not a member of the fan");
    for (const auto& c : subset)
        for (const auto& face : faces(c))
            if (std::find(subset.begin(), subset.end(), face) == subset.end()) return false;
    return true;
}

Cone kuga_sigma(long n) {
    return Cone::from_rays(2, std::vector<IntVector>{{Integer(1), Integer(n)}, {Integer(1), Integer(n + 1)}});
}

Fan kuga_window_fan(long window) {
    std::vector<Cone> maximal;
    for (long n = -window; n <= window; ++n) maximal.push_back(kuga_sigma(n).negated());
    return Fan::from_maximal(2, maximal);
}

Cone kuga_window_support(long window) {
    return Cone::from_rays(2, std::vector<IntVector>{{Integer(-1), Integer(window)}, {Integer(-1), Integer(-window - 1)}});
}

std::vector<RationalMatrix> kuga_generators(long d) {
    RationalMatrix shear = RationalMatrix::identity(2);
    shear(1, 0) = d;
    RationalMatrix reflect = RationalMatrix::identity(2);
    reflect(1, 1) = -1;
    return {shear, reflect, shear * reflect};
}

}  // namespace conefort
