// Acceptance criteria 1-10; prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "conefort/catalog.hpp"
#include "oracles/fans.hpp"

using namespace conefort;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

long long det_small(const std::vector<std::vector<long long>>& m) {
    const std::size_t k = m.size();
    if (k == 0) return 1;
    if (k == 1) return m[0][0];
    long long out = 0;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::vector<long long>> minor;
        for (std::size_t i = 1; i < k; ++i) {
            std::vector<long long> row;
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(row);
        }
        out += (j % 2 == 0 ? 1 : -1) * m[0][j] * det_small(minor);
    }
    return out;
}

std::vector<std::vector<long long>> adjugate(const std::vector<std::vector<long long>>& m) {
    const std::size_t k = m.size();
    std::vector<std::vector<long long>> adj(k, std::vector<long long>(k, 1));
    if (k == 1) return adj;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<std::vector<long long>> minor;
            for (std::size_t r = 0; r < k; ++r) {
                if (r == i) continue;
                std::vector<long long> row;
                for (std::size_t c = 0; c < k; ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(row);
            }
            adj[j][i] = ((i + j) % 2 == 0 ? 1 : -1) * det_small(minor);
        }
    return adj;
}

long brute_torus_rank(const std::vector<long>& orders, long p) {
    // count x in prod Z/n_i with p x = 0 by enumeration, then take log_p
    long total = 1;
    for (long n : orders) total *= n;
    long killed = 0;
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        bool zero = true;
        for (long n : orders) {
            const long x = rest % n;
            rest /= n;
            if ((p * x) % n != 0) zero = false;
        }
        if (zero) ++killed;
    }
    long rank = 0;
    while (killed > 1) {
        killed /= p;
        ++rank;
    }
    return rank;
}

// --- criteria -----------------------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    for (long n = 0; n <= 5; ++n) {
        for (long r = 0; r <= n; ++r) {
            const long sym = r * (r + 1) / 2;
            if (u1_dimension(Family::Siegel, n, r) != sym) o.fail("siegel u1 at n=" + std::to_string(n));
            if (siegel_u1_dimension_by_rank(n, r) != sym) o.fail("siegel constraint rank at n=" + std::to_string(n));
            if (u1_dimension(Family::Universal, n, r) != 1 + r + sym) o.fail("universal u1");
            if (u1_dimension(Family::Kuga, n, r) != r + sym) o.fail("kuga u1");
        }
        const long base = n * (n + 1) / 2;
        if (base_dimension(Family::Siegel, n) != base || u1_dimension(Family::Siegel, n, n) != base) o.fail("siegel base");
        if (base_dimension(Family::Universal, n) != 1 + n + base || u1_dimension(Family::Universal, n, n) != 1 + n + base)
            o.fail("universal base");
        if (base_dimension(Family::Kuga, n) != n + base || u1_dimension(Family::Kuga, n, n) != n + base) o.fail("kuga base");
        for (const auto& row : ed_table(Family::Siegel, n, 3, 2, 2))
            if (row.component.u1_dimension != row.component.r * (row.component.r + 1) / 2 || row.component.base_dimension != base)
                o.fail("siegel table row");
    }
    if (o.pass) o.detail = "siegel, universal, kuga closed forms and constraint rank for n <= 5";
    return o;
}

Outcome criterion2() {
    Outcome o;
    const Family families[] = {Family::Siegel, Family::Universal, Family::Kuga, Family::Gl2, Family::KugaGl2};
    std::size_t verdicts = 0;
    for (Family f : families) {
        const bool unit = f == Family::Gl2 || f == Family::KugaGl2;
        for (long n = unit ? 1 : 1; n <= (unit ? 1 : 3); ++n)
            for (long d : f == Family::Universal ? std::vector<long>{4, 6} : std::vector<long>{3, 4, 5})
                for (long m = 2; m <= 12; ++m)
                    for (long p : {2L, 3L, 5L, 7L, 11L})
                        for (long r = 0; r <= n; ++r) {
                            const EdBound e = ed_lower_bound(f, n, r, d, m, p);
                            const bool want = r == n && m % p == 0;
                            ++verdicts;
                            if (e.incompressible != want)
                                o.fail(to_string(f) + " n=" + std::to_string(n) + " r=" + std::to_string(r) + " m=" +
                                       std::to_string(m) + " p=" + std::to_string(p));
                        }
    }
    std::size_t torus = 0;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
        for (long a = 1; a <= 30; ++a) {
            const auto single = torus_cover_ed({a}, p);
            if (single.value != brute_torus_rank({a}, p) || single.incompressible != (a % p == 0)) o.fail("torus single");
            for (long b = 1; b <= 30; ++b) {
                ++torus;
                const auto ed = torus_cover_ed({a, b}, p);
                if (ed.value != brute_torus_rank({a, b}, p))
                    o.fail("torus (" + std::to_string(a) + "," + std::to_string(b) + ") p=" + std::to_string(p));
                if (ed.incompressible != (a % p == 0 && b % p == 0)) o.fail("torus verdict");
            }
        }
    if (o.pass) o.detail = std::to_string(verdicts) + " family verdicts, " + std::to_string(torus) + " torus covers";
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> entry(-9, 9);
    std::size_t pairs = 0;
    while (pairs < 500 && o.pass) {
        const std::size_t k = 1 + rng() % 4;
        std::vector<std::vector<long long>> b(k, std::vector<long long>(k)), m(k, std::vector<long long>(k));
        for (auto& row : b)
            for (auto& x : row) x = entry(rng);
        for (auto& row : m)
            for (auto& x : row) x = entry(rng);
        const long long db = det_small(b), dm = det_small(m);
        if (db == 0 || dm == 0 || std::llabs(dm) > 10000) continue;
        ++pairs;
        IntegerMatrix bm(k, k), sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                bm(i, j) = Integer(static_cast<long>(b[i][j]));
                long long s = 0;
                for (std::size_t t = 0; t < k; ++t) s += b[i][t] * m[t][j];
                sub(i, j) = Integer(static_cast<long>(s));
            }
        const FiniteAbelianGroup g =
            quotient_group(IntegerLattice::from_generators(bm), IntegerLattice::from_generators(sub));

        // Z^k / M Z^k is the image of x -> adj(M) x mod |det M|; enumerate it by BFS.
        const long long D = std::llabs(dm);
        const auto adj = adjugate(m);
        std::vector<std::vector<long long>> gens(k, std::vector<long long>(k));
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i) gens[j][i] = ((adj[i][j] % D) + D) % D;
        auto encode = [&](const std::vector<long long>& v) {
            unsigned long long code = 0;
            for (long long x : v) code = code * static_cast<unsigned long long>(D) + static_cast<unsigned long long>(x);
            return code;
        };
        std::unordered_set<unsigned long long> seen{encode(std::vector<long long>(k, 0))};
        std::vector<std::vector<long long>> elements{std::vector<long long>(k, 0)};
        for (std::size_t head = 0; head < elements.size(); ++head)
            for (const auto& gen : gens) {
                std::vector<long long> next = elements[head];
                for (std::size_t i = 0; i < k; ++i) next[i] = (next[i] + gen[i]) % D;
                if (seen.insert(encode(next)).second) elements.push_back(next);
            }
        if (static_cast<long long>(elements.size()) != D || g.order() != Integer(static_cast<long>(D))) {
            o.fail("order mismatch for |det| = " + std::to_string(D));
            break;
        }
        // the t-torsion counts for every t | D determine the group
        std::vector<long long> divisors;
        for (long long t = 1; t <= D; ++t)
            if (D % t == 0) divisors.push_back(t);
        std::map<long long, long long> order_count;
        for (const auto& e : elements)
            for (long long t : divisors) {
                bool zero = true;
                for (long long x : e) zero = zero && (t * x) % D == 0;
                if (zero) {
                    ++order_count[t];
                    break;
                }
            }
        for (long long t : divisors) {
            long long brute = 0;
            for (const auto& [ord, c] : order_count)
                if (t % ord == 0) brute += c;
            Integer predicted = 1;
            for (const auto& f : g.invariant_factors()) predicted *= gcd(Integer(static_cast<long>(t)), f);
            if (predicted != Integer(static_cast<long>(brute))) {
                o.fail("torsion count mismatch, group " + g.to_string());
                break;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(pairs) + " sublattice pairs";
    return o;
}

Outcome criterion4() {
    Outcome o;
    SplitMix64 rng(4);
    for (std::size_t i = 0; i < 200 && o.pass; ++i) {
        const std::size_t rank = static_cast<std::size_t>(rng.uniform(2, 4));
        const Cone c = random_full_cone(rng, rank);
        const std::size_t drop = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(rank) - 1));
        const Report rep = check_lemma51(OpenCone(c, rank - drop, drop), drop, 50, rng.next());
        for (const char* name : {"fm-equals-projected-rays", "interior-preimage"}) {
            const Check* chk = rep.find(name);
            if (!chk || !chk->pass) o.fail(std::string(name) + " on " + c.to_string() + (chk ? ": " + chk->witness : ""));
        }
        if (!rep.passed()) o.fail("report failed on " + c.to_string());
    }
    if (o.pass) o.detail = "200 cones of rank 2-4, 50 interior samples each";
    return o;
}

Outcome criterion5() {
    Outcome o;
    SplitMix64 rng(5);
    const std::pair<std::size_t, std::size_t> splits[] = {{1, 1}, {2, 1}, {2, 2}};
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < 50 && o.pass; ++i) {
        const auto [n, m] = splits[i % 3];
        const SigmaCase wanted = (i / 3) % 2 == 0 ? SigmaCase::A : SigmaCase::B;
        const Core core = random_core(rng, n, m, wanted);
        (wanted == SigmaCase::A ? a : b) += 1;
        const Report rep = check_lemma52(core, 20, rng.next(), 20);
        const char* required[] = {"f-decreasing", "f-midpoint-convex", wanted == SigmaCase::A ? "f-positive" : "f-neg-inf-dichotomy"};
        for (const char* name : required) {
            const Check* chk = rep.find(name);
            if (!chk || !chk->pass) o.fail(std::string(name) + " on " + core.parent().closure().to_string());
        }
        if (!rep.passed()) o.fail("report failed on " + core.parent().closure().to_string());
    }
    if (o.pass) o.detail = std::to_string(a) + " case-A and " + std::to_string(b) + " case-B cores, 20 rays x 20 scalings";
    return o;
}

Outcome criterion6() {
    Outcome o;
    FundamentalOptions opts;
    opts.sequences = 1000;
    opts.tolerance = 1e-9;
    const auto corpus = fundamental_corpus(6, 30);
    bool gl2 = false, kuga = false;
    SplitMix64 rng(6);
    for (const auto& inst : corpus) {
        gl2 = gl2 || inst.label == "gl2-slice";
        kuga = kuga || inst.label == "kuga-slice";
        if (inst.cone.rank() > 3) o.fail(inst.label + " has rank above 3");
        const Report rep = check_fundamental(inst, rng.next(), opts);
        const Check* agree = rep.find("sampler-agrees");
        if (!agree || !agree->pass) o.fail(inst.label + ": sampler disagrees");
        if (!rep.passed()) o.fail(inst.label + ": report failed");
    }
    if (corpus.size() != 30 || !gl2 || !kuga) o.fail("corpus must hold 30 instances with both slices");
    if (o.pass) o.detail = "30 instances including the GL2 and Kuga slices, 1000 sequences each";
    return o;
}

Outcome criterion7() {
    Outcome o;
    for (long d : {3L, 4L, 5L}) {
        const Report rep = verify_gl2(d, 1000, 7);
        for (const auto& c : rep.checks)
            if (!c.pass) o.fail("d=" + std::to_string(d) + " " + c.name + ": " + c.witness);
        // independent closed form: |e^{-2 pi i z/d}| = e^{-s/d} for z = r + s/(2 pi i)
        std::mt19937_64 rng(static_cast<std::uint64_t>(d));
        std::uniform_real_distribution<double> rr(0, static_cast<double>(d)), ss(1e-3, 50);
        const Gl2FixedPoint g = gl2_fixed_point_data(d);
        for (int i = 0; i < 1000; ++i) {
            const double r = rr(rng), s = ss(rng);
            const Complex z(r, -s / (2 * M_PI));
            const double modulus = std::abs(chart_coordinates(g.model, g.model.point_from_ambient({z})).front());
            if (!(modulus > 0 && modulus < 1) || std::abs(modulus - std::exp(-s / static_cast<double>(d))) > 1e-12)
                o.fail("modulus off closed form at d=" + std::to_string(d));
        }
        if (g.stabilizer.kernel.invariant_factors() != IntVector{Integer(d)} ||
            g.stabilizer.action != std::vector<std::vector<Rational>>{{ratio(d - 1, d)}})
            o.fail("stabilizer table at d=" + std::to_string(d));
    }
    if (o.pass) o.detail = "d = 3, 4, 5, 1000 points each, exponent table {zeta_d^-1}";
    return o;
}

Outcome criterion8() {
    Outcome o;
    for (long d : {3L, 4L})
        for (long window = 1; window <= 8; ++window) {
            const KugaFixedPoint k = kuga_fixed_point_data(d, window);
            if (!validate(k.fan).ok()) o.fail("fan invalid");
            for (const auto& c : k.fan.cones())
                if (c.dimension() == 2) {
                    const Integer det = c.rays()[0][0] * c.rays()[1][1] - c.rays()[0][1] * c.rays()[1][0];
                    if (abs(det) != 1) o.fail("non-unimodular cone " + c.to_string());
                }
            const RationalMatrix reflect_shear = k.generators[2];
            if (!is_invariant_under(k.fan, {k.shift, reflect_shear}, InvarianceMode::Truncated)) o.fail("not invariant");
            for (const auto& kc : k.cones) {
                const long n = kc.n;
                if (!(kc.characters == IntegerMatrix{{-(n + 1), 1}, {n, -1}}) || kc.determinant != 1)
                    o.fail("character matrix at n=" + std::to_string(n));
                auto mod = [d](long a) { return ratio(((a % d) + d) % d, d); };
                const std::array<std::vector<Rational>, 2> want = {std::vector<Rational>{mod(-(n + 1)), mod(n)},
                                                                   std::vector<Rational>{mod(1), mod(-1)}};
                if (kc.action != want) o.fail("action table at n=" + std::to_string(n));
            }
            const Report rep = verify_kuga(d, window, 50, 8);
            for (const auto& c : rep.checks)
                if (!c.pass) o.fail(c.name + ": " + c.witness);
        }
    if (o.pass) o.detail = "windows 1-8, d = 3, 4";
    return o;
}

Outcome criterion9() {
    Outcome o;
    const Cone quadrant = Cone::from_rays(2, std::vector<IntVector>{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}});
    const PolydiscResult half = punctured_polydisc_check(IntegerLattice::standard(2), quadrant, quadrant, 0.5, 1000, 9);
    std::size_t half_fail = 0;
    for (const auto& s : half.samples) half_fail += s.pass ? 0 : 1;
    if (half.samples.size() != 1000 || half_fail != 0) o.fail(std::to_string(half_fail) + " failures at radius 0.5");
    const PolydiscResult one = punctured_polydisc_check(IntegerLattice::standard(2), quadrant, quadrant, 1.0, 1000, 9);
    std::size_t one_fail = 0;
    for (const auto& s : one.samples) one_fail += s.pass ? 0 : 1;
    if (one_fail == 0) o.fail("no failure at radius 1.0");
    if (o.pass) o.detail = "radius 0.5: 1000/1000 pass; radius 1.0: " + std::to_string(one_fail) + " failures";
    return o;
}

Outcome criterion10() {
    Outcome o;
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<long> small(-3, 3), pos(1, 3);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5), angle(-M_PI, M_PI);
    std::size_t agreements = 0, approaching = 0;
    for (int f = 0; f < 20; ++f) {
        const Fan fan = oracle::random_complete_plane_fan(rng);
        if (stratum_index(fan).size() != fan.size()) o.fail("stratum count differs from cone count");
        std::vector<Cone> nonzero;
        for (const auto& c : fan.cones())
            if (c.dimension() > 0) nonzero.push_back(c);
        for (int s = 0; s < 100; ++s) {
            const Cone& sigma = nonzero[static_cast<std::size_t>(s) % nonzero.size()];
            const TorusChartModel model(IntegerLattice::standard(2), sigma);
            IntVector v(2, Integer(0));
            if (s % 2 == 0) {
                for (const auto& r : sigma.rays())
                    for (std::size_t i = 0; i < 2; ++i) v[i] -= pos(rng) * r[i];
            } else {
                v = {Integer(small(rng)), Integer(small(rng))};
            }
            // unit speed in the sup norm keeps every coordinate inside double range
            const double speed = std::max({1.0, std::abs(v[0].get_d()), std::abs(v[1].get_d())});
            const double v0 = v[0].get_d() / speed, v1 = v[1].get_d() / speed;
            const double b0 = jitter(rng), b1 = jitter(rng);
            std::vector<TorusPoint> seq;
            for (int step = 1; step <= 40; ++step)
                seq.push_back(TorusPoint::from_polar({b0 + step * v0, b1 + step * v1}, {angle(rng), angle(rng)}));
            // chart-coordinate vanishing: every coordinate of the stratum's ideal shrinks along the
            // second half of the sequence and ends below 1e-6
            bool vanishing = true;
            std::vector<double> previous;
            for (std::size_t step = seq.size() / 2; step < seq.size(); ++step) {
                const std::vector<Complex> w = chart_coordinates(model, seq[step]);
                std::vector<double> moduli;
                for (std::size_t idx : model.top_generators()) moduli.push_back(std::abs(w[idx]));
                if (!previous.empty())
                    for (std::size_t i = 0; i < moduli.size(); ++i)
                        if (!(moduli[i] < previous[i])) vanishing = false;
                previous = moduli;
            }
            for (double m : previous)
                if (!(m < 1e-6)) vanishing = false;
            const bool got = approaches_stratum(model, seq);
            if (got != vanishing) o.fail("disagreement on " + sigma.to_string());
            // for 2-cones only escape directions in -int(sigma) can qualify, and they do once the
            // final log-modulus bound clears the vanishing threshold
            if (sigma.dimension() == 2) {
                IntVector neg = v;
                for (auto& x : neg) x = -x;
                const bool inside = sigma.contains(neg, Strictness::Interior);
                double worst = -1e300;
                for (std::size_t idx : model.top_generators()) {
                    const IntVector& chi = model.monoid_generators()[idx];
                    const double bound = 0.5 * (std::abs(chi[0].get_d()) + std::abs(chi[1].get_d())) +
                                         40 * (chi[0].get_d() * v0 + chi[1].get_d() * v1);
                    worst = std::max(worst, bound);
                }
                if (!inside && got) o.fail("approach outside -int(sigma) on " + sigma.to_string());
                if (inside && worst < kVanishingLogModulus - 1 && !got) o.fail("missed escape on " + sigma.to_string());
            }
            agreements += got == vanishing ? 1 : 0;
            approaching += got ? 1 : 0;
        }
    }
    if (o.pass)
        o.detail = "20 fans, " + std::to_string(agreements) + " sequences agree (" + std::to_string(approaching) + " approaching)";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, 1, criterion1},  {2, 1, criterion2},  {3, 30, criterion3}, {4, 60, criterion4}, {5, 30, criterion5},
        {6, 60, criterion6}, {7, 5, criterion7},  {8, 5, criterion8},  {9, 5, criterion9},  {10, 10, criterion10},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.limit_seconds) out.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
        all = all && out.pass;
        std::printf("criterion %2d %s %.3fs %s\n", c.id, out.pass ? "PASS" : "FAIL", seconds, out.detail.c_str());
    }
    return all ? 0 : 1;
}
