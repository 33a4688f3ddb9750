#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conefort/catalog.hpp"
#include "conefort/io.hpp"

namespace py = pybind11;
using namespace conefort;
using io::Json;

namespace {

std::string report_json(const Report& r) { return io::report_to_json(r).dump(); }

std::string cone_op(const std::string& op, const std::string& text) {
    const Cone c = io::cone_from_json(Json::parse(text));
    if (op == "dual") return io::cone_to_json(dual(c)).dump();
    Json out = Json::array();
    for (const auto& f : faces(c)) out.push_back(io::cone_to_json(f));
    return out.dump();
}

IntegerLattice lattice_from_columns(const std::vector<std::vector<long>>& columns) {
    if (columns.empty()) throw DimensionMismatch("need at least one generator");
    std::vector<IntVector> gens;
    for (const auto& col : columns) gens.emplace_back(col.begin(), col.end());
    return IntegerLattice::from_generators(gens.front().size(), gens);
}

}  // namespace

PYBIND11_MODULE(_conefort, m) {
    m.doc() = "Exact cones, fans, toric charts and essential-dimension bounds";

    static py::exception<Error> base(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<InvalidLevel>(m, "InvalidLevel", base.ptr());
    py::register_exception<InvalidRank>(m, "InvalidRank", base.ptr());
    py::register_exception<NotPrime>(m, "NotPrime", base.ptr());
    py::register_exception<UnsupportedFamily>(m, "UnsupportedFamily", base.ptr());
    py::register_exception<HypothesisViolated>(m, "HypothesisViolated", base.ptr());

    m.def("u1_dimension", [](const std::string& f, long n, long r) { return u1_dimension(parse_family(f), n, r); },
          py::arg("family"), py::arg("n"), py::arg("r"));
    m.def("base_dimension", [](const std::string& f, long n) { return base_dimension(parse_family(f), n); },
          py::arg("family"), py::arg("n"));
    m.def("siegel_u1_dimension_by_rank", &siegel_u1_dimension_by_rank, py::arg("n"), py::arg("r"));
    m.def(
        "ed_lower_bound",
        [](const std::string& f, long n, long r, long d, long mm, long p) {
            const EdBound e = ed_lower_bound(parse_family(f), n, r, d, mm, p);
            return py::make_tuple(e.bound, e.incompressible, e.component.u1_dimension, e.component.base_dimension);
        },
        "(bound, incompressible, u1_dim, base_dim)", py::arg("family"), py::arg("n"), py::arg("r"), py::arg("d"),
        py::arg("m"), py::arg("p"));
    m.def(
        "bound_table_tsv",
        [](const std::string& f, long n, long d, long mm, long p) { return bound_table_tsv(ed_table(parse_family(f), n, d, mm, p)); },
        py::arg("family"), py::arg("n"), py::arg("d"), py::arg("m"), py::arg("p"));
    m.def(
        "torus_cover_ed",
        [](const std::vector<long>& orders, long p) {
            const TorusCoverEd e = torus_cover_ed(orders, p);
            return py::make_tuple(e.value, e.incompressible);
        },
        py::arg("orders"), py::arg("p"));
    m.def(
        "quotient_invariant_factors",
        [](const std::vector<std::vector<long>>& ambient, const std::vector<std::vector<long>>& sub) {
            const FiniteAbelianGroup g = quotient_group(lattice_from_columns(ambient), lattice_from_columns(sub));
            std::vector<std::string> out;
            for (const auto& f : g.invariant_factors()) out.push_back(f.get_str());
            return out;
        },
        "Invariant factors of ambient / sub, lattices given by generator lists", py::arg("ambient"), py::arg("sub"));

    m.def("cone_dual_json", [](const std::string& text) { return cone_op("dual", text); }, py::arg("cone_json"));
    m.def("cone_faces_json", [](const std::string& text) { return cone_op("faces", text); }, py::arg("cone_json"));
    m.def(
        "cone_is_smooth", [](const std::string& text) { return is_smooth(io::cone_from_json(Json::parse(text))); },
        py::arg("cone_json"));
    m.def(
        "fan_is_valid",
        [](const std::string& text) { return validate(io::fan_file_from_json(Json::parse(text)).fan).ok(); },
        py::arg("fan_json"));

    m.def("gl2_chart", &gl2_chart, py::arg("d"), py::arg("z"));
    m.def("twisted_coordinate", &twisted_coordinate, py::arg("r"), py::arg("s"));
    m.def(
        "verify_gl2", [](long d, std::size_t samples, std::uint64_t seed) { return report_json(verify_gl2(d, samples, seed)); },
        py::arg("d"), py::arg("samples") = 1000, py::arg("seed") = 1);
    m.def(
        "verify_kuga",
        [](long d, long window, std::size_t samples, std::uint64_t seed) {
            return report_json(verify_kuga(d, window, samples, seed));
        },
        py::arg("d"), py::arg("window") = 5, py::arg("samples") = 200, py::arg("seed") = 1);
    m.def(
        "verify_polydisc",
        [](double radius, std::size_t samples, std::uint64_t seed) {
            const Cone q = Cone::from_rays(2, std::vector<IntVector>{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}});
            return report_json(punctured_polydisc_check(IntegerLattice::standard(2), q, q, radius, samples, seed).report);
        },
        "Quadrant chart inside the quadrant cone", py::arg("radius"), py::arg("samples") = 1000, py::arg("seed") = 1);
    m.def(
        "verify_fundamental",
        [](std::uint64_t seed, std::size_t count, std::size_t sequences) {
            FundamentalOptions opts;
            opts.sequences = sequences;
            std::vector<std::string> out;
            SplitMix64 rng(seed);
            for (const auto& inst : fundamental_corpus(seed, count)) out.push_back(report_json(check_fundamental(inst, rng.next(), opts)));
            return out;
        },
        py::arg("seed") = 1, py::arg("count") = 30, py::arg("sequences") = 1000);
}
