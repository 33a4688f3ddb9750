#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "conefort/catalog.hpp"
#include "conefort/io.hpp"

using namespace conefort;
using io::Json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kParse = 2, kDimension = 3, kLevel = 4 };

struct Config {
    std::vector<std::string> inputs;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<double> tolerance;
    long window = 5;
};

std::uint64_t resolve_seed(const Config& cfg) {
    if (cfg.seed) return *cfg.seed;
    if (const char* env = std::getenv("CONEFORT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError(std::string("CONEFORT_SEED is not an unsigned integer: ") + env);
        }
    }
    return 1;
}

const std::string& single_input(const Config& cfg, std::size_t expected = 1) {
    if (cfg.inputs.size() != expected)
        throw ParseError("expected " + std::to_string(expected) + " --input file(s), got " + std::to_string(cfg.inputs.size()));
    return cfg.inputs.front();
}

void emit_report(const Report& rep, const Config& cfg, Json extra = Json()) {
    if (cfg.format == "tsv") {
        std::cout << "name\tpass\twitness\n";
        for (const auto& c : rep.checks) std::cout << c.name << '\t' << (c.pass ? "true" : "false") << '\t' << c.witness << '\n';
        return;
    }
    Json out = io::report_to_json(rep);
    if (!extra.is_null())
        for (auto& [k, v] : extra.items()) out[k] = v;
    std::cout << out.dump(2) << '\n';
}

int report_exit(const Report& rep) { return rep.passed() ? kOk : kCheckFailed; }

/// Merges per-instance reports check by check; failures keep the first witness.
Report aggregate(const std::string& lemma, std::uint64_t seed, const std::vector<std::pair<std::string, Report>>& parts) {
    std::vector<std::string> order;
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
    std::map<std::string, std::string> first_failure;
    for (const auto& [label, rep] : parts)
        for (const auto& c : rep.checks) {
            if (!tally.count(c.name)) order.push_back(c.name);
            auto& t = tally[c.name];
            ++t.second;
            if (c.pass) ++t.first;
            else if (!first_failure.count(c.name)) first_failure[c.name] = label + ": " + c.witness;
        }
    Report out;
    out.lemma = lemma;
    out.seed = seed;
    for (const auto& name : order) {
        const auto [ok, total] = tally[name];
        std::string witness = std::to_string(ok) + "/" + std::to_string(total) + " instances";
        if (ok != total) witness += "; " + first_failure[name];
        out.add(name, ok == total, witness);
    }
    return out;
}

// --- cone ------------------------------------------------------------------------------

int cmd_cone(const std::string& op, const Config& cfg) {
    if (op == "intersect") {
        if (cfg.inputs.size() != 2) throw ParseError("intersect needs two --input files");
        const Cone a = io::cone_from_json(io::read_json_file(cfg.inputs[0]));
        const Cone b = io::cone_from_json(io::read_json_file(cfg.inputs[1]));
        std::cout << io::cone_to_json(intersect(a, b)).dump(2) << '\n';
        return kOk;
    }
    const Cone c = io::cone_from_json(io::read_json_file(single_input(cfg)));
    Json out;
    if (op == "dual") {
        out = io::cone_to_json(dual(c));
    } else if (op == "faces") {
        out["count"] = 0;
        out["faces"] = Json::array();
        for (const auto& f : faces(c)) out["faces"].push_back(io::cone_to_json(f));
        out["count"] = out["faces"].size();
    } else {
        out["smooth"] = is_smooth(c);
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
}

// --- fan -------------------------------------------------------------------------------

std::string violations_witness(const FanReport& r) {
    if (r.ok()) return "all fan axioms hold";
    const auto& v = r.violations.front();
    return v.axiom + " (cones " + std::to_string(v.first) + ", " + std::to_string(v.second) + "): " + v.detail;
}

std::string invariance_witness(const Fan& f, const std::vector<RationalMatrix>& gens, InvarianceMode mode) {
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Cone image = f.cones()[i].image(gens[g]);
            if (f.contains(image)) continue;
            if (mode == InvarianceMode::Truncated && !f.covers(to_rational(image.interior_point()))) continue;
            return "generator " + std::to_string(g) + " maps " + f.cones()[i].to_string() + " to " + image.to_string() +
                   ", not a cone of the fan";
        }
    return "every image is a cone of the fan";
}

int cmd_fan(const std::string& check, const Config& cfg, bool truncated) {
    Report rep;
    rep.lemma = "fan";
    rep.seed = resolve_seed(cfg);
    if (check == "refines") {
        if (cfg.inputs.size() != 2) throw ParseError("refines needs --input FINE --input COARSE");
        const io::FanFile fine = io::fan_file_from_json(io::read_json_file(cfg.inputs[0]));
        const io::FanFile coarse = io::fan_file_from_json(io::read_json_file(cfg.inputs[1]));
        if (fine.fan.ambient_rank() != coarse.fan.ambient_rank()) throw DimensionMismatch("fans live in different ranks");
        std::string witness = "every cone lies in a coarse cone";
        for (const auto& c : fine.fan.cones()) {
            bool inside = false;
            for (const auto& d : coarse.fan.cones()) inside = inside || d.contains(c);
            if (!inside) {
                witness = c.to_string() + " lies in no coarse cone";
                break;
            }
        }
        rep.add("refines", refines(fine.fan, coarse.fan), witness);
        emit_report(rep, cfg);
        return report_exit(rep);
    }
    const io::FanFile file = io::fan_file_from_json(io::read_json_file(single_input(cfg)));
    const FanReport axioms = validate(file.fan);
    if (check == "validate") {
        rep.add("validate", axioms.ok(), violations_witness(axioms));
    } else if (!axioms.ok()) {
        rep.add("validate", false, violations_witness(axioms));
    } else if (check == "complete") {
        if (!file.support) throw ParseError("complete needs a support in the fan file");
        const bool ok = is_complete_over(file.fan, {*file.support, false});
        rep.add("complete", ok, ok ? "support is covered exactly" : "fan and support differ");
    } else if (check == "smooth") {
        std::string witness = "every cone unimodular";
        for (const auto& c : file.fan.cones())
            if (!is_smooth(c, file.fan.lattice())) {
                witness = c.to_string() + " is not smooth";
                break;
            }
        rep.add("smooth", is_smooth(file.fan), witness);
    } else {
        if (file.symmetry_generators.empty()) throw ParseError("invariant needs symmetry_generators in the fan file");
        const InvarianceMode mode = truncated ? InvarianceMode::Truncated : InvarianceMode::Strict;
        rep.add("invariant", is_invariant_under(file.fan, file.symmetry_generators, mode),
                invariance_witness(file.fan, file.symmetry_generators, mode));
    }
    emit_report(rep, cfg);
    return report_exit(rep);
}

// --- edbound ---------------------------------------------------------------------------

struct EdArgs {
    std::string family;
    long n = 1, r = 1, d = 3, m = 2, p = 2;
    bool table = false;
    std::vector<long> orders;
};

int cmd_edbound(const EdArgs& a, const Config& cfg) {
    const Family family = parse_family(a.family);
    if (family == Family::TorusR) {
        if (a.orders.empty()) throw ParseError("torus_r needs --orders");
        const TorusCoverEd ed = torus_cover_ed(a.orders, a.p);
        std::string orders;
        for (std::size_t i = 0; i < a.orders.size(); ++i) orders += (i ? "," : "") + std::to_string(a.orders[i]);
        if (cfg.format == "tsv") {
            std::cout << "family\torders\tp\ted\tincompressible\n"
                      << "torus_r\t" << orders << '\t' << a.p << '\t' << ed.value << '\t'
                      << (ed.incompressible ? "true" : "false") << '\n';
        } else {
            Json out;
            out["family"] = "torus_r";
            out["orders"] = a.orders;
            out["p"] = a.p;
            out["ed"] = ed.value;
            out["incompressible"] = ed.incompressible;
            std::cout << out.dump(2) << '\n';
        }
        return kOk;
    }
    const std::vector<EdBound> rows =
        a.table ? ed_table(family, a.n, a.d, a.m, a.p) : std::vector<EdBound>{ed_lower_bound(family, a.n, a.r, a.d, a.m, a.p)};
    if (cfg.format == "tsv") {
        std::cout << bound_table_tsv(rows);
        return kOk;
    }
    Json out = Json::array();
    for (const auto& e : rows) {
        Json row;
        row["family"] = to_string(e.component.family);
        row["n"] = e.component.n;
        row["r"] = e.component.r;
        row["d"] = e.d;
        row["m"] = e.m;
        row["p"] = e.p;
        row["u1_dim"] = e.component.u1_dimension;
        row["bound"] = e.bound;
        row["base_dim"] = e.component.base_dimension;
        row["incompressible"] = e.incompressible;
        out.push_back(std::move(row));
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
}

// --- verify ----------------------------------------------------------------------------

struct VerifyArgs {
    long d = 3;
    std::size_t cones = 200;
    std::size_t sequences = 1000;
    double radius = 0.5;
    std::string csv;
};

Json gl2_certificate(long d) {
    const Gl2FixedPoint g = gl2_fixed_point_data(d);
    Json out;
    out["d"] = d;
    out["fan"] = io::fan_file_to_json({g.fan, {}, Cone::from_rays(1, std::vector<IntVector>{{Integer(-1)}})});
    out["character"] = io::exact_string(g.character.front());
    out["stratum"] = "origin";
    out["stabilizer"] = g.stabilizer.kernel.to_string();
    Json action = Json::array();
    for (const auto& row : g.stabilizer.action) {
        Json r = Json::array();
        for (const auto& a : row) r.push_back(root_of_unity_string(a));
        action.push_back(std::move(r));
    }
    out["action"] = std::move(action);
    return out;
}

Json kuga_certificate(long d, long window) {
    const KugaFixedPoint k = kuga_fixed_point_data(d, window);
    Json out;
    out["d"] = d;
    out["window"] = window;
    std::vector<RationalMatrix> gens = k.generators;
    gens.push_back(k.shift);
    out["fan"] = io::fan_file_to_json({k.fan, gens, kuga_window_support(window)});
    Json cones = Json::array();
    for (const auto& c : k.cones) {
        Json entry;
        entry["n"] = c.n;
        Json chars = Json::array();
        for (std::size_t i = 0; i < 2; ++i)
            chars.push_back({io::exact_string(c.characters(i, 0)), io::exact_string(c.characters(i, 1))});
        entry["characters"] = std::move(chars);
        entry["determinant"] = io::exact_string(c.determinant);
        Json action = Json::array();
        for (const auto& row : c.action) action.push_back({root_of_unity_string(row[0]), root_of_unity_string(row[1])});
        entry["action"] = std::move(action);
        cones.push_back(std::move(entry));
    }
    out["cones"] = std::move(cones);
    return out;
}

int cmd_verify(const std::string& target, const VerifyArgs& a, const Config& cfg) {
    const std::uint64_t seed = resolve_seed(cfg);
    SplitMix64 rng(seed);
    if (target == "lemma51") {
        std::vector<std::pair<std::string, Report>> parts;
        for (std::size_t i = 0; i < a.cones; ++i) {
            const std::size_t rank = static_cast<std::size_t>(rng.uniform(2, 4));
            const Cone c = random_full_cone(rng, rank);
            const std::size_t drop = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(rank) - 1));
            parts.emplace_back(c.to_string(), check_lemma51(OpenCone(c, rank - drop, drop), drop, cfg.samples.value_or(50), rng.next()));
        }
        const Report rep = aggregate("5.1", seed, parts);
        emit_report(rep, cfg);
        return report_exit(rep);
    }
    if (target == "lemma52") {
        const std::pair<std::size_t, std::size_t> splits[] = {{1, 1}, {2, 1}, {2, 2}};
        std::vector<std::pair<std::string, Report>> parts;
        for (std::size_t i = 0; i < a.cones; ++i) {
            const auto [n, m] = splits[i % 3];
            const SigmaCase wanted = (i / 3) % 2 == 0 ? SigmaCase::A : SigmaCase::B;
            const Core core = random_core(rng, n, m, wanted);
            parts.emplace_back(core.parent().closure().to_string(), check_lemma52(core, cfg.samples.value_or(20), rng.next()));
        }
        const Report rep = aggregate("5.2", seed, parts);
        emit_report(rep, cfg);
        return report_exit(rep);
    }
    if (target == "fundamental") {
        FundamentalOptions opts;
        opts.samples = cfg.samples.value_or(opts.samples);
        opts.sequences = a.sequences;
        opts.tolerance = cfg.tolerance.value_or(opts.tolerance);
        std::vector<std::pair<std::string, Report>> parts;
        for (const auto& inst : fundamental_corpus(seed, a.cones)) parts.emplace_back(inst.label, check_fundamental(inst, rng.next(), opts));
        const Report rep = aggregate("fundamental", seed, parts);
        emit_report(rep, cfg);
        return report_exit(rep);
    }
    if (target == "polydisc") {
        const Cone quadrant = Cone::from_rays(2, std::vector<IntVector>{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}});
        const PolydiscResult res = punctured_polydisc_check(IntegerLattice::standard(2), quadrant, quadrant, a.radius,
                                                            cfg.samples.value_or(1000), seed, {},
                                                            cfg.tolerance.value_or(kLogTolerance));
        if (!a.csv.empty()) {
            std::ofstream out(a.csv);
            if (!out) throw ParseError("cannot write " + a.csv);
            out << res.csv();
        }
        Json extra;
        extra["radius"] = a.radius;
        extra["certified_radius"] = res.certified_radius;
        if (res.nearest_failure) extra["nearest_failure"] = *res.nearest_failure;
        emit_report(res.report, cfg, extra);
        return report_exit(res.report);
    }
    if (target == "gl2") {
        const Report rep = verify_gl2(a.d, cfg.samples.value_or(1000), seed);
        Json extra;
        extra["certificate"] = gl2_certificate(a.d);
        emit_report(rep, cfg, extra);
        return report_exit(rep);
    }
    const Report rep = verify_kuga(a.d, cfg.window, cfg.samples.value_or(200), seed);
    Json extra;
    extra["certificate"] = kuga_certificate(a.d, cfg.window);
    emit_report(rep, cfg, extra);
    return report_exit(rep);
}

void add_common(CLI::App* app, Config& cfg) {
    app->add_option("--input", cfg.inputs, "input JSON file (repeat for two-argument operations)");
    app->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
    app->add_option("--seed", cfg.seed, "random seed (falls back to CONEFORT_SEED)");
    app->add_option("--samples", cfg.samples, "sample count");
    app->add_option("--tolerance", cfg.tolerance, "log-scale tolerance of numeric cross-checks");
    app->add_option("--window", cfg.window, "Kuga window N")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cone, fan and toric-boundary verification"};
    app.require_subcommand(1);
    Config cfg;

    std::string cone_op;
    auto* cone = app.add_subcommand("cone", "cone algebra on a JSON cone record");
    cone->add_option("op", cone_op)->required()->check(CLI::IsMember({"dual", "faces", "smooth", "intersect"}));
    add_common(cone, cfg);

    std::string fan_check;
    bool truncated = false;
    auto* fan = app.add_subcommand("fan", "checks on a JSON fan file");
    fan->add_option("check", fan_check)->required()->check(CLI::IsMember({"validate", "complete", "smooth", "invariant", "refines"}));
    fan->add_flag("--truncated", truncated, "exempt images leaving the support (finite windows)");
    add_common(fan, cfg);

    EdArgs ed;
    auto* edbound = app.add_subcommand("edbound", "essential-dimension lower bounds as TSV");
    edbound->add_option("--family", ed.family)->required();
    edbound->add_option("--n", ed.n);
    edbound->add_option("--r", ed.r);
    edbound->add_option("--d", ed.d);
    edbound->add_option("--m", ed.m);
    edbound->add_option("--p", ed.p);
    edbound->add_option("--orders", ed.orders, "cover degrees for torus_r")->delimiter(',');
    edbound->add_flag("--table", ed.table, "one row per r = 0..n");
    add_common(edbound, cfg);
    cfg.format = "json";

    std::string target;
    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run a built-in verifier");
    verify->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"lemma51", "lemma52", "fundamental", "polydisc", "gl2", "kuga"}));
    verify->add_option("--d", va.d, "level");
    verify->add_option("--cones", va.cones, "corpus size");
    verify->add_option("--sequences", va.sequences, "sampler sequences per instance");
    verify->add_option("--radius", va.radius, "polydisc radius");
    verify->add_option("--csv", va.csv, "write polydisc samples as CSV");
    add_common(verify, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }
    if (edbound->parsed() && edbound->count("--format") == 0) cfg.format = "tsv";
    if (verify->parsed() && target == "fundamental" && verify->count("--cones") == 0) va.cones = 30;
    if (verify->parsed() && target == "lemma52" && verify->count("--cones") == 0) va.cones = 50;

    try {
        if (cone->parsed()) return cmd_cone(cone_op, cfg);
        if (fan->parsed()) return cmd_fan(fan_check, cfg, truncated);
        if (edbound->parsed()) return cmd_edbound(ed, cfg);
        return cmd_verify(target, va, cfg);
    } catch (const DimensionMismatch& e) {
        std::cerr << "dimension mismatch: " << e.what() << '\n';
        return kDimension;
    } catch (const InvalidLevel& e) {
        std::cerr << "invalid level: " << e.what() << '\n';
        return kLevel;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    }
}
