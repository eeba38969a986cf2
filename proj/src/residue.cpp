#include "tfr/residue.hpp"

#include <algorithm>
#include <functional>

namespace tfr {

namespace {

void require_even(long r) {
    if (r <= 0 || r % 2 != 0) throw Error("InvalidArgument", "r must be a positive even integer, got " + std::to_string(r));
}

/// the other codimension one face of parent through the codimension two face q
std::size_t opposite(const MonoidalComplex& mc, std::size_t parent, std::size_t child, std::size_t q) {
    for (auto e : mc.facets_of(parent))
        if (e != child && mc.is_face(q, e)) return e;
    throw Error("InternalError", "no second wall through " + mc.label(q) + " in " + mc.label(parent));
}

/// coefficient of Q in the boundary induced on child by the boundary `coeff` of parent
Rat step_coefficient(const MonoidalComplex& mc, std::size_t parent, std::size_t child, std::size_t q,
                     const std::function<Rat(std::size_t)>& coeff, Int* q_out = nullptr) {
    std::size_t ej = opposite(mc, parent, child, q);
    QVec lj = local_frame(mc, ej, parent).functional;
    LocalFrame fq = local_frame(mc, q, child);
    Vec pi;
    for (const auto& t : fq.basis) {
        Rat x = dot(t, lj);
        if (x.get_den() != 1) throw Error("InternalError", "projected normal is not integral");
        pi.push_back(x.get_num());
    }
    Int qq = 0;
    for (std::size_t i = 0; i < pi.size(); ++i)
        if (fq.normal[i] != 0) {
            qq = pi[i] / fq.normal[i];
            break;
        }
    if (qq <= 0 || scale(qq, fq.normal) != pi)
        throw Error("InternalError", "projection of e_j is not a positive multiple of e_Q");
    if (q_out) *q_out = qq;
    return 1 - (1 - coeff(ej)) / Rat(qq);
}

}  // namespace

Different different(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, std::size_t center) {
    if (mc.codim(center) != 1 || !mc.cone(center).contains(psi) || prime_coefficient(mc, b, center) != 1)
        throw Error("NotAnLcCenter", mc.label(center) + " is not a codimension one lc center");
    Different out;
    out.center = center;
    auto coeff = [&](std::size_t e) { return prime_coefficient(mc, b, e); };
    bool first = true;
    for (auto f : mc.facets_containing(center)) {
        for (auto q : mc.facets_of(center)) {
            Int qq;
            Rat m = step_coefficient(mc, f, center, q, coeff, &qq);
            if (first) {
                out.coefficients[q] = m;
                out.q[q] = qq;
            } else if (out.coefficients.at(q) != m) {
                throw Error("InconsistentDifferent", "facets " + mc.label(mc.facets_containing(center).front()) + " and " +
                                                         mc.label(f) + " induce different coefficients at " + mc.label(q));
            }
        }
        first = false;
    }
    for (const auto& [q, m] : out.coefficients) {
        Rat val = dot(local_frame(mc, q, center).functional, psi);
        if (val != 1 - m)
            throw Error("InconsistentDifferent", "<e_Q, ψ> = " + str(val) + " but 1 - mult = " + str(1 - m) + " at " + mc.label(q));
    }
    return out;
}

// ---------------------------------------------------------------- residue constants

ResidueDatum residue_constants(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r, TreeVariant variant) {
    require_even(r);
    validate_boundary(mc, b);
    unsigned long p = mc.characteristic();
    ResidueDatum dt;
    dt.r = r;
    dt.characteristic = p;
    dt.psi = psi;
    auto e = [&](std::size_t tau, std::size_t f) {
        try {
            return Unit(p, Rat(signed_incidence(mc, tau, f))).pow(r);
        } catch (const Error& err) {
            if (err.code() == "NotAUnit") throw Error("PreconditionFailed", "incidence vanishes in k at " + mc.label(tau));
            throw;
        }
    };
    SpanningTree t = spanning_tree(mc, variant);
    if (t.order.size() != mc.facets().size()) throw Error("PreconditionFailed", "facet graph is not connected");
    dt.constants_facets[t.root] = Unit::one(p);
    for (std::size_t i = 1; i < t.order.size(); ++i) {
        auto f = t.order[i];
        auto [par, tau] = t.parent.at(f);
        dt.constants_facets[f] = dt.constants_facets.at(par) * e(tau, f) * e(tau, par).inverse();
    }
    for (auto tau : mc.codim1_cones()) {
        auto f = mc.facets_containing(tau).front();
        dt.constants_primes[tau] = dt.constants_facets.at(f) * e(tau, f).inverse();
        for (auto g : mc.facets_containing(tau)) dt.signs[{tau, g}] = signed_incidence(mc, tau, g) > 0 ? 1 : -1;
    }
    std::string why;
    if (!verify_residue_datum(mc, dt, &why)) throw Error("NotOrientable", why);
    return dt;
}

bool verify_residue_datum(const MonoidalComplex& mc, const ResidueDatum& dt, std::string* why) {
    for (const auto& [tau, ci] : dt.constants_primes)
        for (auto f : mc.facets_containing(tau)) {
            Unit e = Unit(dt.characteristic, Rat(signed_incidence(mc, tau, f))).pow(dt.r);
            if (dt.constants_facets.at(f) != ci * e) {
                if (why)
                    *why = "c_F = " + dt.constants_facets.at(f).str() + " but c_i (ε d)^r = " + (ci * e).str() + " at " +
                           mc.label(tau) + " in " + mc.label(f);
                return false;
            }
        }
    return true;
}

// ---------------------------------------------------------------- LCS gluing

GlueCheck lcs_glue_check(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r) {
    require_even(r);
    GlueCheck g;
    LcsLocus loc = lcs_locus(mc, b, psi);
    if (!loc.y) return g;
    const MonoidalComplex& y = *loc.y;
    unsigned long p = mc.characteristic();
    for (auto qy : conductor_fan(y)) {
        if (y.codim(qy) != 1) continue;
        std::size_t q = *mc.find(y.cone(qy));
        if (!mc.cone(q).contains(psi)) continue;
        for (auto f : mc.facets_containing(q)) {
            std::vector<std::size_t> walls;
            for (auto e : mc.facets_of(f))
                if (mc.is_face(q, e)) walls.push_back(e);
            if (walls.size() != 2) continue;
            auto side = [&](std::size_t e) { return Unit(p, Rat(incidence(mc, q, e) * incidence(mc, e, f))).pow(r); };
            Unit l = side(walls[0]), rr = side(walls[1]);
            ++g.checked;
            if (l != rr) {
                g.ok = false;
                g.witness = std::array<std::size_t, 4>{q, f, walls[0], walls[1]};
                g.lhs = l;
                g.rhs = rr;
                return g;
            }
        }
    }
    return g;
}

LcsDifferent lcs_different(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r) {
    GlueCheck g = lcs_glue_check(mc, b, psi, r);
    if (!g.ok) {
        const auto& w = *g.witness;
        throw Error("GlueCheckFailed", "(" + mc.label(w[0]) + ", " + mc.label(w[1]) + ", " + mc.label(w[2]) + ", " +
                                           mc.label(w[3]) + "): " + g.lhs->str() + " != " + g.rhs->str());
    }
    LcsDifferent out;
    out.locus = lcs_locus(mc, b, psi);
    if (!out.locus.y) return out;
    const MonoidalComplex& y = *out.locus.y;
    for (auto s : out.locus.maximal) out.differents.emplace(s, different(mc, b, psi, s));
    bool effective = std::all_of(b.begin(), b.end(), [](const auto& kv) { return kv.second >= 0; });
    for (auto qy : y.codim1_cones()) {
        std::size_t q = *mc.find(y.cone(qy));
        std::vector<Rat> vals;
        for (auto fy : y.facets_containing(qy)) {
            std::size_t fx = *mc.find(y.cone(fy));
            vals.push_back(out.differents.at(fx).coefficients.at(q));
        }
        if (is_smooth_prime(y, qy)) {
            Rat c = vals.front();
            Rat rc = c * r;
            if (rc.get_den() != 1) throw Error("InternalError", "r B_Y is not integral at " + mc.label(q));
            if (effective && c < 0) throw Error("InternalError", "B_Y is not effective at " + mc.label(q));
            out.boundary[qy] = c;
        } else {
            for (const auto& v : vals)
                if (v != 1)
                    throw Error("InconsistentDifferent", "conductor prime " + mc.label(q) + " of the LCS has different " + str(v));
        }
    }
    for (const auto& eq : facet_equations(y, out.boundary))
        if (dot(eq.functional, psi) != eq.rhs)
            throw Error("InconsistentDifferent", "ψ does not solve the induced system at " + y.label(eq.tau));
    return out;
}

// ---------------------------------------------------------------- higher residues

HigherResidue higher_residue(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r, std::size_t z) {
    require_even(r);
    if (!has_normal_components(mc)) throw Error("NotNormalComponents", "some facet is not normal");
    auto centers = lc_centers(mc, b, psi);
    if (!std::binary_search(centers.begin(), centers.end(), z))
        throw Error("NotAnLcCenter", mc.label(z) + " is not an lc center");
    unsigned long p = mc.characteristic();
    std::optional<HigherResidue> ref;
    std::size_t count = 0;

    using Coeffs = std::map<std::size_t, Rat>;
    std::function<void(std::size_t, const Coeffs&, const Unit&)> walk = [&](std::size_t c, const Coeffs& bc, const Unit& k) {
        if (c == z) {
            ++count;
            if (!ref) {
                ref = HigherResidue{k, bc, 0};
            } else if (ref->constant != k || ref->boundary != bc) {
                throw Error("InternalError", "residue along two chains to " + mc.label(z) + " differ");
            }
            return;
        }
        for (auto child : mc.facets_of(c)) {
            if (!mc.is_face(z, child) || bc.at(child) != 1) continue;
            Coeffs next;
            for (auto q : mc.facets_of(child))
                next[q] = step_coefficient(mc, c, child, q, [&](std::size_t e) { return bc.at(e); });
            Unit step = Unit(p, Rat(signed_incidence(mc, child, c))).pow(-r);
            walk(child, next, k * step);
        }
    };
    for (auto f : mc.facets_containing(z)) {
        Coeffs bf;
        for (auto t : mc.facets_of(f)) bf[t] = prime_coefficient(mc, b, t);
        walk(f, bf, Unit::one(p));
    }
    if (!ref) throw Error("NotAnLcCenter", "no chain of lc centers reaches " + mc.label(z));
    ref->chains = count;
    for (const auto& [q, m] : ref->boundary) {
        Rat val = dot(local_frame(mc, q, z).functional, psi);
        if (val != 1 - m) throw Error("InternalError", "<e_Q, ψ> disagrees with the induced boundary at " + mc.label(q));
    }
    return *ref;
}

std::vector<ChainStep> lcs_chain(const MonoidalComplex& mc, const Boundary& b, long r) {
    require_even(r);
    if (!has_normal_components(mc)) throw Error("NotNormalComponents", "some facet is not normal");
    std::vector<ChainStep> out;
    MonoidalComplex cur = mc;
    Boundary cb = b;
    while (true) {
        auto cls = classify(cur, cb, r);
        if (!cls.wlc) throw Error("NotWlc", "step " + std::to_string(out.size()) + " is not wlc");
        QVec psi = cls.psi->psi;
        if (!out.empty()) {
            for (const auto& eq : facet_equations(cur, cb))
                if (dot(eq.functional, out.back().psi) != eq.rhs)
                    throw Error("InternalError", "log discrepancy function changed along the chain");
            psi = out.back().psi;
        }
        out.push_back(ChainStep{cur, cb, psi, residue_constants(cur, cb, psi, r)});
        auto ld = lcs_different(cur, cb, psi, r);
        if (!ld.locus.y) break;
        if (!ld.locus.s2.value || !ld.locus.weakly_normal.value)
            throw Error("InternalError", "LCS locus is not S2 and weakly normal");
        cur = *ld.locus.y;
        cb = ld.boundary;
    }
    return out;
}

}  // namespace tfr
