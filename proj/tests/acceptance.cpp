// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace tfr;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
};

bool same_complex(const MonoidalComplex& a, const MonoidalComplex& b) {
    if (a.cones().size() != b.cones().size()) return false;
    for (std::size_t i = 0; i < a.cones().size(); ++i)
        if (a.cone(i) != b.cone(i) || a.lattice(i) != b.lattice(i)) return false;
    return true;
}

bool contains(const std::vector<long>& v, long x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::size_t count_chains(const MonoidalComplex& mc, std::size_t z) {
    std::function<std::size_t(std::size_t)> down = [&](std::size_t c) -> std::size_t {
        if (c == z) return 1;
        std::size_t n = 0;
        for (auto f : mc.facets_of(c))
            if (mc.is_face(z, f)) n += down(f);
        return n;
    };
    std::size_t total = 0;
    for (auto f : mc.facets())
        if (mc.is_face(z, f)) total += down(f);
    return total;
}

Outcome coordinate_subspaces() {
    Outcome o;
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t p = 1; p <= n; ++p) {
            std::string tag = "X(" + std::to_string(n) + "," + std::to_string(p) + ")";
            auto v = validate(coordinate_arrangement_raw(n, p));
            o.expect(v.ok(), tag + " does not validate");
            if (!v.ok()) continue;
            const auto& mc = *v.complex;
            o.expect(is_s2(mc).value, tag + " not S2");
            o.expect(is_weakly_normal(mc).value, tag + " not weakly normal");
            auto r = classify(mc, {});
            o.expect(r.wlc, tag + " not wlc");
            o.expect(r.psi && is_zero(r.psi->psi), tag + " psi != 0");
            o.expect(contains(r.invertibility_orders, 2), tag + " misses order 2");
            auto chain = lcs_chain(mc, {});
            o.expect(chain.size() == n - p + 1, tag + " chain length " + std::to_string(chain.size()));
            for (std::size_t i = 0; i < chain.size(); ++i) {
                o.expect(same_complex(chain[i].x, coordinate_arrangement(n, p + i)), tag + " chain step mismatch");
                for (const auto& [t, c] : chain[i].boundary) o.expect(c == 0, tag + " nonzero boundary");
                for (const auto& [f, c] : chain[i].residue.constants_facets) o.expect(c.is_one(), tag + " facet constant != 1");
                for (const auto& [t, c] : chain[i].residue.constants_primes) o.expect(c.is_one(), tag + " prime constant != 1");
            }
        }
    return o;
}

Outcome normal_log_pair() {
    Outcome o;
    auto cusp = cusp_cone();
    std::size_t sigma = fx::ref(cusp, "sigma"), t1 = fx::ref(cusp, "tau1"), origin = fx::ref(cusp, "origin");
    auto r0 = classify(cusp, {});
    o.expect(r0.psi && r0.psi->psi == QVec{1, 1}, "psi(B=0) != (1,1)");
    o.expect(r0.psi && cusp.cone(sigma).contains(r0.psi->psi), "psi(B=0) outside sigma");
    o.expect(r0.wlc, "B=0 not lc");
    Boundary e1{{t1, 1}};
    auto r1 = classify(cusp, e1);
    o.expect(r1.psi && r1.psi->psi == QVec{Rat(1, 2), 0}, "psi(B=E1) != (1/2,0)");
    std::vector<long> evens;
    for (long n = 2; n <= 12; n += 2) evens.push_back(n);
    o.expect(r1.invertibility_orders == evens, "orders for B=E1 are not the even integers");
    auto d = different(cusp, e1, r1.psi->psi, t1);
    o.expect(d.coefficients.count(origin) && d.coefficients.at(origin) == Rat(1, 2), "different at origin != 1/2");
    auto coord = cusp.lattice(t1).coordinates(r1.psi->psi);
    o.expect(coord && (*coord)[0] == 1 - d.coefficients.at(origin), "<e_Q,psi> != 1 - mult_Q");
    return o;
}

Outcome s2_criterion() {
    Outcome o;
    auto sr = stanley_reisner(5, {{1, 2, 3}, {3, 4, 5}});
    o.expect(!is_1_connected(sr).connected, "two triangles are 1-connected");
    o.expect(!is_s2(sr).value, "two triangles are S2");

    RawComplex good = fx::orthant_raw(2);
    good.faces = {{"x", {{1, 0}}}, {"y", {{0, 1}}}};
    good.lattices["x"] = {{2, 0}};
    auto g = is_s2(build(good));
    o.expect(g.value && g.exact, "intersection fixture fails");
    o.expect(is_s2(coordinate_arrangement(4, 2)).value, "X(4,2) not S2");

    RawComplex bad;
    bad.rank = 3;
    RationalCone c(3, {{1, 0, 0}, {0, 1, 0}}, {{0, 0, 1}});
    bad.maximal_cones = {{"W", c.generators()}};
    bad.faces = {{"L", RationalCone(3, {}, {{0, 0, 1}}).generators()}};
    bad.lattices["L"] = {{0, 0, 2}};
    auto mb = build(bad);
    auto b = is_s2(mb);
    o.expect(!b.value && b.exact, "lattice-intersection violation passes");
    o.expect(b.witness.size() == 1 && mb.resolve(b.witness.front()) == mb.resolve("L"), "wrong witness cone");
    o.expect(mb.cone(*mb.resolve("L")).dim() == mb.cone(mb.facets().front()).lineality().rank(),
             "witness is not the minimal face");
    return o;
}

Outcome s2_closure_oracle() {
    Outcome o;
    int instances = 0, attempts = 0;
    long points = 0;
    while (instances < 24 && attempts < 1000) {
        ++attempts;
        std::size_t d = fx::uniform(1, 3);
        std::size_t n = fx::uniform(1, 5);
        Mat gens;
        for (std::size_t i = 0; i < n; ++i) {
            Vec v = fx::random_vec(d, 0, 4);
            if (!is_zero(v)) gens.push_back(v);
        }
        if (gens.empty()) continue;
        RawComplex r;
        r.rank = d;
        r.mode = SemigroupMode::Generators;
        r.maximal_cones = {{"F", gens}};
        r.semigroups["F"] = gens;
        auto v = validate(r);
        if (!v.ok()) continue;
        ++instances;
        auto cl = s2_closure_irreducible(*v.complex);
        fx::BruteS2Closure brute(gens, d, 8, 16);
        std::ostringstream tag;
        tag << "instance " << str(gens);
        fx::grid(d, 0, 8, [&](const Vec& m) {
            ++points;
            bool in_s = cl.semigroup().contains(m), in_sp = cl.contains(m);
            o.expect(in_sp == brute.contains(m), tag.str() + " disagrees at " + str(m));
            o.expect(in_s == brute.in_s(m), tag.str() + " S membership wrong at " + str(m));
            o.expect(!in_s || in_sp, tag.str() + " S not in S'");
            o.expect(!in_sp || cl.cone().contains(m), tag.str() + " S' not saturated-bounded");
        });
    }
    o.expect(instances >= 20, "only " + std::to_string(instances) + " instances");
    if (o.ok) o.detail = std::to_string(instances) + " complexes, " + std::to_string(points) + " points";
    return o;
}

Outcome orientability() {
    Outcome o;
    auto three = build(fx::three_facet_raw());
    std::size_t smooth = 0;
    for (auto t : three.codim1_cones()) smooth += is_smooth_prime(three, t);
    // no smooth primes: B = 0 is the only boundary
    o.expect(smooth == 0, "three-facet fan has a smooth prime");
    auto r = classify(three, {});
    o.expect(!r.weakly_normal_log_pair, "three-facet fan accepted in char 0");
    o.expect(!r.orientability.value && r.orientability.witness, "no orientability witness");
    o.expect(is_n_orientable(three.with_characteristic(3), 2).value, "char 3, n = 2 fails");
    o.expect(classify(three.with_characteristic(3), {}).weakly_normal_log_pair, "char 3 not a log pair");
    RawComplex ci = fx::two_facet_raw(3);
    ci.lattices["B"] = {{1, 0}, {0, 1}};
    std::vector<MonoidalComplex> constant{build(ci), coordinate_arrangement(3, 1), coordinate_arrangement(4, 1),
                                          coordinate_arrangement(4, 2), stanley_reisner(3, {{1, 2}, {2, 3}, {1, 3}})};
    for (const auto& mc : constant)
        for (long n = 2; n <= 12; n += 2) o.expect(is_n_orientable(mc, n).value, "constant incidences not " + std::to_string(n) + "-orientable");
    return o;
}

Outcome residue_consistency() {
    Outcome o;
    auto cusp = cusp_cone();
    auto orth = fx::from_raw(fx::orthant_raw(3));
    auto two = build(fx::two_facet_raw(3));
    RawComplex ci = fx::two_facet_raw(3);
    ci.lattices["B"] = {{1, 0}, {0, 1}};
    std::vector<std::pair<MonoidalComplex, Boundary>> cases{
        {cusp, {}},
        {cusp, {{fx::ref(cusp, "tau1"), 1}}},
        {orth, fx::smooth_boundary(orth)},
        {two, fx::smooth_boundary(two)},
        {two.with_characteristic(7), fx::smooth_boundary(two)},
        {build(fx::three_facet_raw()).with_characteristic(3), {}},
        {build(fx::octants_raw()), {}},
        {build(ci), {}},
        {build(fx::glue_fail_raw()), {{fx::ref(build(fx::glue_fail_raw()), "E2"), 1}}}};
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t p = 0; p <= n; ++p) cases.push_back({coordinate_arrangement(n, p), {}});
    std::size_t used = 0, checked = 0;
    for (const auto& [mc, b] : cases) {
        ClassificationReport r;
        try {
            r = classify(mc, b);
        } catch (const Error&) {
            continue;
        }
        if (!r.weakly_normal_log_pair) continue;
        long even = 0;
        for (auto n : r.invertibility_orders)
            if (n % 2 == 0) {
                even = n;
                break;
            }
        if (!even) continue;
        const auto& lf = *r.complex;
        auto d = residue_constants(lf, b, r.psi->psi, even);
        ++used;
        o.expect(verify_residue_datum(lf, d), "datum does not verify");
        for (const auto& [tau, ci] : d.constants_primes)
            for (auto f : lf.facets_containing(tau)) {
                ++checked;
                Unit e = Unit(lf.characteristic(), Rat(signed_incidence(lf, tau, f))).pow(even);
                o.expect(d.constants_facets.at(f) == ci * e, "c_F != c_i (eps d)^r at " + lf.label(tau));
            }
    }
    o.expect(used >= 10, "only " + std::to_string(used) + " fixtures classified");
    auto oct = build(fx::octants_raw());
    auto t = spanning_tree(oct, TreeVariant::Bfs);
    o.expect(t.chords.size() >= 2, "octants have fewer than two independent cycles");
    auto psi = solve_psi(oct, {}).psi;
    auto d1 = residue_constants(oct, {}, psi, 2, TreeVariant::Bfs);
    auto d2 = residue_constants(oct, {}, psi, 2, TreeVariant::ReverseDfs);
    o.expect(spanning_tree(oct, TreeVariant::ReverseDfs).parent != t.parent, "tree variants coincide");
    o.expect(d1.constants_facets == d2.constants_facets && d1.constants_primes == d2.constants_primes,
             "constants depend on the spanning tree");
    if (o.ok) o.detail = std::to_string(used) + " fixtures, " + std::to_string(checked) + " incidences";
    return o;
}

Outcome glue_criterion() {
    Outcome o;
    std::vector<std::pair<MonoidalComplex, Boundary>> normal;
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t p = 1; p < n; ++p) normal.push_back({coordinate_arrangement(n, p), {}});
    auto orth = fx::from_raw(fx::orthant_raw(3));
    normal.push_back({orth, fx::smooth_boundary(orth)});
    auto cusp = cusp_cone();
    normal.push_back({cusp, {{fx::ref(cusp, "tau1"), 1}}});
    for (const auto& [mc, b] : normal) {
        o.expect(has_normal_components(mc), "fixture lacks normal components");
        auto g = lcs_glue_check(mc, b, solve_psi(mc, b).psi, 2);
        o.expect(g.ok, "normal-components input fails the glue check");
    }
    auto glue = build(fx::glue_fail_raw());
    std::size_t q = fx::ref(glue, "Q"), f = glue.facets().front(), e1 = fx::ref(glue, "E1"), e2 = fx::ref(glue, "E2");
    o.expect(incidence(glue, q, e1) == 1 && incidence(glue, q, e2) == 2, "fixture incidences over Q are not 1 and 2");
    Boundary b{{e2, 1}};
    auto g = lcs_glue_check(glue, b, solve_psi(glue, b).psi, 2);
    o.expect(!g.ok, "engineered fixture passes");
    if (g.witness) {
        auto w = *g.witness;
        o.expect(w[0] == q && w[1] == f, "witness Q/F wrong");
        o.expect(std::min(w[2], w[3]) == std::min(e1, e2) && std::max(w[2], w[3]) == std::max(e1, e2), "witness E1/E2 wrong");
        auto side = [&](std::size_t e) { return Unit(0, Rat(incidence(glue, q, e) * incidence(glue, e, f))).pow(2); };
        o.expect(*g.lhs == side(w[2]) && *g.rhs == side(w[3]), "witness values wrong");
        o.detail = "witness (" + glue.label(w[0]) + "," + glue.label(w[1]) + "," + glue.label(w[2]) + "," +
                   glue.label(w[3]) + ") " + g.lhs->str() + " vs " + g.rhs->str();
    } else {
        o.expect(false, "no witness");
    }
    return o;
}

Outcome chain_independence() {
    Outcome o;
    std::size_t centers = 0, chains = 0;
    for (std::size_t n : {3ul, 4ul}) {
        auto mc = coordinate_arrangement(n, 1);
        QVec psi(n, 0);
        for (auto z : lc_centers(mc, {}, psi)) {
            if (mc.is_facet(z)) continue;
            HigherResidue h;
            try {
                h = higher_residue(mc, {}, psi, 2, z);
            } catch (const Error& e) {
                o.expect(false, std::string("higher residue failed: ") + e.what());
                continue;
            }
            ++centers;
            chains += h.chains;
            o.expect(h.chains == count_chains(mc, z), "not every maximal chain was compared at " + mc.label(z));
            o.expect(h.constant.is_one(), "constant != 1 at " + mc.label(z));
            for (const auto& [qf, c] : h.boundary) o.expect(c == 1, "B_Z coefficient != 1 at " + mc.label(z));
        }
    }
    if (o.ok) o.detail = std::to_string(centers) + " centers, " + std::to_string(chains) + " chains";
    return o;
}

Mat mul(const Mat& a, const Mat& b, std::size_t cols) {
    Mat out;
    for (const auto& row : a) out.push_back(row_times(row, b, cols));
    return out;
}

Outcome kernel_invariants() {
    Outcome o;
    const int N = 1000;
    for (int i = 0; i < N; ++i) {
        std::size_t r = fx::uniform(1, 4), c = fx::uniform(1, 4);
        auto f = hnf(fx::random_mat(r, c, -9, 9), c);
        Mat h(f.H.begin(), f.H.begin() + f.rank);
        o.expect(hnf(h, c).H == h, "HNF not idempotent");
    }
    for (int i = 0; i < N;) {
        std::size_t d = fx::uniform(1, 3);
        Mat g = fx::random_mat(d, d, -5, 5), t1 = fx::random_mat(d, d, -3, 3), t2 = fx::random_mat(d, d, -3, 3);
        if (rank(g) != d || rank(t1) != d || rank(t2) != d) continue;
        ++i;
        Sublattice l(d, g), l1(d, mul(t1, l.basis(), d)), l2(d, mul(t2, l1.basis(), d));
        o.expect(sublattice_index(l2, l).value == sublattice_index(l2, l1).value * sublattice_index(l1, l).value,
                 "index not multiplicative");
    }
    for (int i = 0; i < N; ++i) {
        std::size_t d = fx::uniform(1, 3);
        Mat lines;
        if (fx::uniform(0, 5) == 0) lines.push_back(fx::random_vec(d, -2, 2));
        RationalCone c(d, fx::random_mat(fx::uniform(1, 4), d, -3, 3), lines);
        o.expect(dual_cone(dual_cone(c)) == c, "biduality fails for " + c.id());
    }
    for (int i = 0; i < N; ++i) {
        std::size_t d = fx::uniform(1, 3);
        RationalCone c(d, fx::random_mat(fx::uniform(1, 4), d, -3, 3));
        auto p = faces(c);
        fx::grid(d, -2, 2, [&](const Vec& v) {
            QVec q = to_q(v);
            std::size_t hits = 0;
            for (const auto& f : p.faces) hits += f.relint_contains(q);
            o.expect(hits == (c.contains(q) ? 1u : 0u), "relint partition fails for " + c.id());
        });
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_ms;  // 0: no limit
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all{
        {1, "coordinate subspace arrangements", 1000, coordinate_subspaces},
        {2, "normal toric log pair on the cusp cone", 100, normal_log_pair},
        {3, "S2 criterion", 0, s2_criterion},
        {4, "S2-closure oracle equivalence", 30000, s2_closure_oracle},
        {5, "orientability", 0, orientability},
        {6, "residue constant consistency", 0, residue_consistency},
        {7, "LCS glue criterion", 0, glue_criterion},
        {8, "higher residue chain independence", 1000, chain_independence},
        {9, "kernel invariants", 30000, kernel_invariants},
    };
    int failures = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_ms > 0 && ms > c.limit_ms) {
            out.expect(false, "exceeded " + std::to_string(static_cast<long>(c.limit_ms)) + " ms");
        }
        failures += !out.ok;
        std::printf("%s criterion %d: %s (%.1f ms)%s%s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, ms,
                    out.detail.empty() ? "" : " - ", out.detail.c_str());
    }
    return failures;
}
