#include "conefort/io.hpp"

#include <algorithm>
#include <fstream>

namespace conefort::io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
    return *it;
}

std::size_t count_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

IntVector int_vector(const Json& j, std::size_t n) {
    if (!j.is_array()) throw ParseError("expected an array of integers");
    if (j.size() != n)
        throw DimensionMismatch("vector of length " + std::to_string(j.size()) + " in rank " + std::to_string(n));
    IntVector out;
    for (const auto& x : j) out.push_back(integer_from_json(x));
    return out;
}

std::vector<IntVector> int_vectors(const Json& j, std::size_t n) {
    if (!j.is_array()) throw ParseError("expected an array of vectors");
    std::vector<IntVector> out;
    for (const auto& v : j) out.push_back(int_vector(v, n));
    return out;
}

Json vectors_to_json(const std::vector<IntVector>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(exact_string(x));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.dump());
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("not an integer: " + j.dump());
        return z;
    }
    throw ParseError("not an integer: " + j.dump());
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(integer_from_json(j));
    if (!j.is_string()) throw ParseError("not an exact rational: " + j.dump());
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(integer_from_json(Json(s)));
    const Integer num = integer_from_json(Json(s.substr(0, slash)));
    const Integer den = integer_from_json(Json(s.substr(slash + 1)));
    if (den == 0) throw ParseError("zero denominator in " + s);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string exact_string(const Rational& q) { return q.get_str(); }
std::string exact_string(const Integer& z) { return z.get_str(); }

Cone cone_from_json(const Json& j) {
    const std::size_t n = count_from_json(field(j, "ambient_rank"), "ambient_rank");
    std::vector<IntVector> gens;
    if (j.contains("rays")) gens = int_vectors(j["rays"], n);
    bool has_generators = j.contains("rays");
    if (j.contains("lineality")) {
        has_generators = true;
        for (const auto& l : int_vectors(j["lineality"], n)) {
            gens.push_back(l);
            IntVector neg = l;
            for (auto& x : neg) x = -x;
            gens.push_back(std::move(neg));
        }
    }
    Cone c;
    if (has_generators) {
        c = Cone::from_rays(n, gens);
    } else if (j.contains("halfspaces")) {
        std::vector<IntVector> eq;
        if (j.contains("equations")) eq = int_vectors(j["equations"], n);
        c = Cone::from_inequalities(n, int_vectors(j["halfspaces"], n), eq);
    } else {
        throw ParseError("cone record needs rays or halfspaces");
    }
    if (j.contains("twist")) {
        if (!j["twist"].is_number_integer()) throw ParseError("twist must be an integer");
        c = c.with_twist(j["twist"].get<int>());
    }
    return c;
}

Json cone_to_json(const Cone& c) {
    Json out;
    out["ambient_rank"] = c.ambient_rank();
    out["twist"] = c.twist();
    out["dimension"] = c.dimension();
    out["rays"] = vectors_to_json(c.rays());
    out["lineality"] = vectors_to_json(c.lineality_basis());
    out["halfspaces"] = vectors_to_json(c.facets());
    out["equations"] = vectors_to_json(c.equations());
    return out;
}

FanFile fan_file_from_json(const Json& j) {
    const std::size_t n = count_from_json(field(j, "lattice_rank"), "lattice_rank");
    const std::vector<IntVector> rays = int_vectors(field(j, "rays"), n);
    const Json& cones = field(j, "cones");
    if (!cones.is_array()) throw ParseError("cones must be an array of ray-index lists");
    std::vector<Cone> members;
    for (const auto& c : cones) {
        if (!c.is_array()) throw ParseError("cone entries must be ray-index lists");
        std::vector<IntVector> gens;
        for (const auto& idx : c) {
            const std::size_t i = count_from_json(idx, "ray index");
            if (i >= rays.size()) throw ParseError("ray index " + std::to_string(i) + " out of range");
            gens.push_back(rays[i]);
        }
        members.push_back(gens.empty() ? Cone::zero(n) : Cone::from_rays(n, gens));
    }
    FanFile out{Fan(n, std::move(members)), {}, std::nullopt};
    if (j.contains("symmetry_generators")) {
        for (const auto& g : j["symmetry_generators"]) {
            if (!g.is_array() || g.size() != n) throw DimensionMismatch("symmetry generator must be " + std::to_string(n) + " x " + std::to_string(n));
            RationalMatrix m(n, n);
            for (std::size_t r = 0; r < n; ++r) {
                if (!g[r].is_array() || g[r].size() != n) throw DimensionMismatch("symmetry generator row of wrong length");
                for (std::size_t col = 0; col < n; ++col) m(r, col) = rational_from_json(g[r][col]);
            }
            out.symmetry_generators.push_back(std::move(m));
        }
    }
    if (j.contains("support")) {
        const Json& s = j["support"];
        if (s.is_string() && s.get<std::string>() == "full") {
            out.support = Cone::full(n);
        } else {
            out.support = cone_from_json(s);
            if (out.support->ambient_rank() != n) throw DimensionMismatch("support lives in the wrong rank");
        }
    }
    return out;
}

Json fan_file_to_json(const FanFile& f) {
    const std::size_t n = f.fan.ambient_rank();
    std::vector<IntVector> rays;
    for (const auto& c : f.fan.cones()) {
        if (c.lineality_rank() != 0) throw InvalidFan("fan files hold strongly convex cones only");
        rays.insert(rays.end(), c.rays().begin(), c.rays().end());
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    Json cones = Json::array();
    for (const auto& c : f.fan.cones()) {
        Json idx = Json::array();
        for (const auto& r : c.rays())
            idx.push_back(static_cast<std::size_t>(std::lower_bound(rays.begin(), rays.end(), r) - rays.begin()));
        cones.push_back(std::move(idx));
    }
    Json gens = Json::array();
    for (const auto& g : f.symmetry_generators) {
        Json m = Json::array();
        for (std::size_t r = 0; r < g.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(exact_string(g(r, c)));
            m.push_back(std::move(row));
        }
        gens.push_back(std::move(m));
    }
    Json out;
    out["lattice_rank"] = n;
    out["rays"] = vectors_to_json(rays);
    out["cones"] = std::move(cones);
    out["symmetry_generators"] = std::move(gens);
    if (!f.support) {
        out["support"] = nullptr;
    } else if (*f.support == Cone::full(n)) {
        out["support"] = "full";
    } else {
        Json s;
        s["ambient_rank"] = n;
        s["rays"] = vectors_to_json(f.support->rays());
        if (f.support->lineality_rank() > 0) s["lineality"] = vectors_to_json(f.support->lineality_basis());
        out["support"] = std::move(s);
    }
    return out;
}

Json report_to_json(const Report& r) {
    Json out;
    out["lemma"] = r.lemma;
    out["seed"] = r.seed;
    out["pass"] = r.passed();
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["witness"] = c.witness;
        checks.push_back(std::move(entry));
    }
    out["checks"] = std::move(checks);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace conefort::io
