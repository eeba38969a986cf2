#include "tfr/logpair.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tfr {

namespace {

Int ceil_rat(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rat coefficient(const Boundary& b, std::size_t tau) {
    auto it = b.find(tau);
    return it == b.end() ? Rat(0) : it->second;
}

std::vector<std::size_t> lca_walk(const SpanningTree& t, std::size_t a, std::size_t b) {
    auto pa = tree_path(t, a), pb = tree_path(t, b);
    std::size_t k = 0;
    while (k + 1 < pa.size() && k + 1 < pb.size() && pa[k + 1] == pb[k + 1]) ++k;
    std::vector<std::size_t> walk(pa.begin() + k, pa.end());
    for (std::size_t i = pb.size(); i-- > k + 1;) walk.push_back(pb[i]);
    return walk;
}

std::string cycle_str(const MonoidalComplex& mc, const CycleValue& c) {
    std::string s;
    for (std::size_t i = 0; i < c.cycle.size(); ++i) s += (i ? " -> " : "") + mc.label(c.cycle[i]);
    return s + " : " + c.value.str();
}

}  // namespace

bool is_smooth_prime(const MonoidalComplex& mc, std::size_t tau) {
    if (mc.codim(tau) != 1) return false;
    const auto& fs = mc.facets_containing(tau);
    return fs.size() == 1 && incidence(mc, tau, fs.front()) == 1;
}

void validate_boundary(const MonoidalComplex& mc, const Boundary& b) {
    for (const auto& [tau, coeff] : b) {
        if (tau >= mc.cones().size()) throw Error("InvalidBoundary", "unknown cone index " + std::to_string(tau));
        if (!is_smooth_prime(mc, tau))
            throw Error("InvalidBoundary", "boundary coefficient on " + mc.label(tau) + ", which is not a smooth prime");
    }
}

Rat prime_coefficient(const MonoidalComplex& mc, const Boundary& b, std::size_t tau) {
    return is_smooth_prime(mc, tau) ? coefficient(b, tau) : Rat(1);
}

std::vector<FacetEquation> facet_equations(const MonoidalComplex& mc, const Boundary& b) {
    std::vector<FacetEquation> out;
    for (auto f : mc.facets())
        for (auto tau : mc.facets_of(f)) {
            FacetEquation eq;
            eq.tau = tau;
            eq.facet = f;
            eq.functional = local_frame(mc, tau, f).functional;
            eq.rhs = 1 - prime_coefficient(mc, b, tau);
            out.push_back(std::move(eq));
        }
    return out;
}

// ---------------------------------------------------------------- ψ

LogDiscrepancy try_solve_psi(const MonoidalComplex& mc, const Boundary& b) {
    validate_boundary(mc, b);
    LogDiscrepancy out;
    out.core = core(mc).cone;
    out.residue_lattice = mc.lattice(out.core);
    const Mat& basis = out.residue_lattice.basis();
    std::size_t k = basis.size(), d = mc.rank();
    auto eqs = facet_equations(mc, b);
    QMat a;
    QVec rhs;
    for (const auto& eq : eqs) {
        QVec row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = dot(basis[j], eq.functional);
        a.push_back(row);
        rhs.push_back(eq.rhs);
    }
    out.psi.assign(d, 0);
    if (k == 0) {
        out.feasible = true;
        for (std::size_t i = 0; i < eqs.size(); ++i)
            if (rhs[i] != 0) {
                out.feasible = false;
                out.inconsistent = {{eqs[i].tau, eqs[i].facet}};
                break;
            }
        return out;
    }
    auto sol = solve_rational(a, rhs, k);
    if (!sol.feasible) {
        for (std::size_t i = 0; i < eqs.size(); ++i)
            if (sol.certificate[i] != 0) out.inconsistent.push_back({eqs[i].tau, eqs[i].facet});
        return out;
    }
    out.feasible = true;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < d; ++c) out.psi[c] += sol.x[j] * basis[j][c];
    for (const auto& kv : sol.kernel) {
        QVec dir(d, 0);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t c = 0; c < d; ++c) dir[c] += kv[j] * basis[j][c];
        out.ambiguity.push_back(dir);
    }
    return out;
}

LogDiscrepancy solve_psi(const MonoidalComplex& mc, const Boundary& b) {
    auto r = try_solve_psi(mc, b);
    if (!r.feasible) {
        std::string s;
        for (const auto& [t, f] : r.inconsistent) s += " (" + mc.label(t) + "," + mc.label(f) + ")";
        throw Error("Infeasible", "inconsistent equations:" + s);
    }
    return r;
}

// ---------------------------------------------------------------- orientability

std::vector<CycleValue> cycle_values(const MonoidalComplex& mc, TreeVariant variant) {
    SpanningTree t = spanning_tree(mc, variant);
    if (t.order.size() != mc.facets().size()) throw Error("PreconditionFailed", "facet graph is not connected");
    unsigned long p = mc.characteristic();
    auto ratio = [&](std::size_t tau, std::size_t from, std::size_t to) {
        try {
            return Unit(p, Rat(signed_incidence(mc, tau, to), signed_incidence(mc, tau, from)));
        } catch (const Error& e) {
            if (e.code() == "NotAUnit")
                throw Error("PreconditionFailed", "incidence along " + mc.label(tau) + " vanishes in k");
            throw;
        }
    };
    std::map<std::size_t, Unit> v{{t.root, Unit::one(p)}};
    for (std::size_t i = 1; i < t.order.size(); ++i) {
        auto f = t.order[i];
        auto [par, tau] = t.parent.at(f);
        v[f] = v.at(par) * ratio(tau, par, f);
    }
    std::vector<CycleValue> out;
    for (const auto& e : t.chords) {
        CycleValue c;
        c.value = v.at(e.a) * ratio(e.label, e.a, e.b) * v.at(e.b).inverse();
        auto walk = lca_walk(t, e.a, e.b);
        c.cycle = walk;
        c.cycle.push_back(walk.front());
        out.push_back(std::move(c));
    }
    return out;
}

Orientability is_n_orientable(const MonoidalComplex& mc, long n) {
    Orientability o;
    o.n = n;
    o.orientation_caveat = mc.characteristic() == 0 && n % 2 != 0;
    for (const auto& c : cycle_values(mc))
        if (!c.value.pow(n).is_one()) {
            o.value = false;
            o.witness = c;
            return o;
        }
    return o;
}

QOrientability q_orientability(const MonoidalComplex& mc) {
    QOrientability q;
    for (const auto& c : cycle_values(mc)) {
        unsigned long ord = c.value.order();
        if (ord == 0) {
            q.value = false;
            q.exponent = 0;
            if (!q.witness) q.witness = c;
        } else if (q.exponent != 0) {
            q.exponent = std::lcm(q.exponent, ord);
        }
    }
    return q;
}

// ---------------------------------------------------------------- classification

std::vector<long> invertibility_orders(const MonoidalComplex& mc, const Boundary& b, long nmax) {
    validate_boundary(mc, b);
    std::size_t c = core(mc).cone;
    const Mat& basis = mc.lattice(c).basis();
    std::size_t k = basis.size();
    auto eqs = facet_equations(mc, b);
    Mat m;
    for (const auto& eq : eqs) {
        Vec row(k);
        for (std::size_t j = 0; j < k; ++j) {
            Rat x = dot(basis[j], eq.functional);
            if (x.get_den() != 1) throw Error("InternalError", "facet normal not integral on the residue lattice");
            row[j] = x.get_num();
        }
        m.push_back(row);
    }
    auto cycles = cycle_values(mc);
    std::vector<long> out;
    for (long n = 1; n <= nmax; ++n) {
        bool oriented = std::all_of(cycles.begin(), cycles.end(), [&](const CycleValue& cv) { return cv.value.pow(n).is_one(); });
        if (!oriented) continue;
        Vec rhs;
        for (const auto& eq : eqs) rhs.push_back(is_smooth_prime(mc, eq.tau) ? ceil_rat(n * (1 - coefficient(b, eq.tau))) : Int(0));
        bool ok;
        if (k == 0)
            ok = std::all_of(rhs.begin(), rhs.end(), [](const Int& x) { return x == 0; });
        else
            ok = solve_integral(m, rhs, Sublattice::full(k)).has_value();
        if (ok) out.push_back(n);
    }
    return out;
}

ClassificationReport classify(const MonoidalComplex& input, const Boundary& b, long nmax, std::optional<long> box) {
    ClassificationReport r;
    r.normality = normality_report(input, box);
    if (!r.normality.seminormal.value)
        throw Error("PreconditionFailed", "not seminormal: " + r.normality.seminormal.note);
    if (!r.normality.s2.value) throw Error("PreconditionFailed", "not S2: " + r.normality.s2.note);
    if (!r.normality.weakly_normal.value)
        throw Error("PreconditionFailed", "not weakly normal: " + r.normality.weakly_normal.note);
    MonoidalComplex mc = input.mode() == SemigroupMode::Generators ? input.as_lattice_family() : input;
    validate_boundary(mc, b);

    auto psi = try_solve_psi(mc, b);
    r.orientability = q_orientability(mc);
    r.weakly_normal_log_pair = psi.feasible && r.orientability.value;
    if (!psi.feasible) {
        for (const auto& [t, f] : psi.inconsistent) r.witnesses["psi"].push_back(mc.label(t) + "<" + mc.label(f));
    } else {
        r.psi = psi;
    }
    if (!r.orientability.value) r.witnesses["q_orientable"].push_back(cycle_str(mc, *r.orientability.witness));
    if (!r.weakly_normal_log_pair) {
        r.witnesses["log_pair"] = r.witnesses[psi.feasible ? "q_orientable" : "psi"];
    }

    for (const auto& [tau, coeff] : b)
        if (coeff > 1) r.non_wlc_locus.push_back(tau);
    r.wlc = r.weakly_normal_log_pair && r.non_wlc_locus.empty();
    if (r.weakly_normal_log_pair) {
        bool inside = mc.cone(psi.core).contains(psi.psi);
        if (inside != r.non_wlc_locus.empty())
            throw Error("InternalError", "ψ-in-core test disagrees with the boundary coefficient test");
    }
    for (auto t : r.non_wlc_locus) r.witnesses["wlc"].push_back(mc.label(t) + " has coefficient " + str(b.at(t)));
    if (!r.weakly_normal_log_pair) r.witnesses["wlc"] = r.witnesses["log_pair"];

    bool nodal = true;
    for (auto tau : mc.codim1_cones()) {
        const auto& fs = mc.facets_containing(tau);
        bool ok = false;
        if (fs.size() == 1) {
            Int d = incidence(mc, tau, fs[0]);
            ok = d == 1 || d == 2;
        } else if (fs.size() == 2) {
            ok = incidence(mc, tau, fs[0]) == 1 && incidence(mc, tau, fs[1]) == 1;
        }
        if (!ok) {
            if (nodal) r.witnesses["slc"].push_back(mc.label(tau) + " is not nodal (" + std::to_string(fs.size()) + " facets)");
            nodal = false;
        }
    }
    r.slc = r.wlc && nodal;
    if (!r.wlc) r.witnesses["slc"] = r.witnesses["wlc"];
    r.invertibility_orders = invertibility_orders(mc, b, nmax);
    r.complex = mc;
    return r;
}

Rat pairing(const Vec& e, const QVec& psi) { return dot(e, psi); }

// ---------------------------------------------------------------- lc centers

std::vector<std::size_t> lc_centers(const MonoidalComplex& mc, const Boundary& b, const QVec& psi) {
    std::vector<std::size_t> bad;
    for (const auto& [tau, coeff] : b)
        if (coeff > 1) bad.push_back(tau);
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < mc.cones().size(); ++s) {
        if (!mc.cone(s).contains(psi)) continue;
        bool excluded = std::any_of(bad.begin(), bad.end(), [&](std::size_t t) { return mc.is_face(s, t); });
        if (!excluded) out.push_back(s);
    }
    return out;
}

void require_wlc(const MonoidalComplex& mc, const Boundary& b, const QVec& psi) {
    validate_boundary(mc, b);
    for (const auto& [tau, coeff] : b)
        if (coeff > 1) throw Error("NotWlc", mc.label(tau) + " has coefficient " + str(coeff) + " > 1");
    for (const auto& eq : facet_equations(mc, b))
        if (dot(eq.functional, psi) != eq.rhs)
            throw Error("NotWlc", "ψ violates the equation of " + mc.label(eq.tau) + " in " + mc.label(eq.facet));
    for (auto f : mc.facets())
        if (!mc.cone(f).contains(psi)) throw Error("NotWlc", "ψ outside " + mc.label(f));
    auto q = q_orientability(mc);
    if (!q.value) throw Error("NotWlc", "not Q-orientable: " + cycle_str(mc, *q.witness));
}

MinimalCenter minimal_lc_center(const MonoidalComplex& mc, const Boundary& b, const QVec& psi) {
    require_wlc(mc, b, psi);
    auto c = mc.carrier(psi);
    if (!c) throw Error("NotWlc", "ψ outside the support");
    MinimalCenter m;
    m.cone = *c;
    m.normal = cone_is_normal(mc, *c, &m.certificate);
    return m;
}

LcsLocus lcs_locus(const MonoidalComplex& mc, const Boundary& b, const QVec& psi) {
    require_wlc(mc, b, psi);
    std::vector<std::size_t> positive;
    for (auto s : lc_centers(mc, b, psi))
        if (!mc.is_facet(s)) positive.push_back(s);
    LcsLocus out;
    for (auto s : positive) {
        bool dominated = std::any_of(positive.begin(), positive.end(), [&](std::size_t t) { return t != s && mc.is_face(s, t); });
        if (!dominated) out.maximal.push_back(s);
    }
    if (out.maximal.empty()) return out;
    for (auto s : out.maximal) out.pure_codim1 = out.pure_codim1 && mc.codim(s) == 1;
    out.y = mc.restrict_to(out.maximal);
    out.s2 = is_s2(*out.y);
    out.weakly_normal = is_weakly_normal(*out.y);
    return out;
}

}  // namespace tfr
