#include "tfr/normality.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tfr {

namespace {

void for_each_point(const Vec& lo, const Vec& hi, const std::function<bool(const Vec&)>& f) {
    Vec m = lo;
    std::size_t d = lo.size();
    if (d == 0) {
        f(m);
        return;
    }
    while (true) {
        if (!f(m)) return;
        std::size_t k = 0;
        while (k < d) {
            if (m[k] < hi[k]) {
                ++m[k];
                break;
            }
            m[k] = lo[k];
            ++k;
        }
        if (k == d) return;
    }
}

Vec filled(std::size_t d, long v) { return Vec(d, Int(v)); }

}  // namespace

IncidenceTable incidence_table(const MonoidalComplex& mc) {
    IncidenceTable t;
    for (auto f : mc.facets())
        for (auto tau : mc.facets_of(f)) {
            Sublattice outer = lattice_intersect(mc.lattice(f), mc.cone(tau).span());
            t[{tau, f}] = sublattice_index(mc.lattice(tau), outer).value;
        }
    return t;
}

// ---------------------------------------------------------------- S2 closure

S2Closure::S2Closure(std::size_t ambient, const Mat& generators) : base_(ambient, generators) {
    faces_ = facets(base_.cone());
    for (const auto& tau : faces_) {
        Mat g = base_.generators();
        for (const auto& v : base_.generators())
            if (tau.contains(v)) g.push_back(neg(v));
        pieces_.emplace_back(ambient, g);
    }
}

bool S2Closure::contains(const Vec& m) const {
    if (pieces_.empty()) return base_.contains(m);
    for (const auto& p : pieces_)
        if (!p.contains(m)) return false;
    return true;
}

std::vector<Vec> S2Closure::enumerate(const Vec& lo, const Vec& hi) const {
    std::vector<Vec> out;
    for_each_point(lo, hi, [&](const Vec& m) {
        if (contains(m)) out.push_back(m);
        return true;
    });
    return out;
}

S2Closure s2_closure_irreducible(const MonoidalComplex& mc) {
    if (mc.facets().size() != 1) throw Error("NotIrreducible", "complex has " + std::to_string(mc.facets().size()) + " facets");
    if (mc.mode() != SemigroupMode::Generators)
        throw Error("PreconditionFailed", "S2 closure oracle needs semigroup generators");
    return S2Closure(mc.rank(), mc.semigroup_generators(mc.facets().front()));
}

long default_box(const MonoidalComplex& mc) {
    if (mc.mode() != SemigroupMode::Generators) return 0;
    std::set<Vec> gens;
    Int mx = 1;
    for (auto f : mc.facets())
        for (const auto& g : mc.semigroup_generators(f)) {
            gens.insert(g);
            for (const auto& x : g) mx = std::max(mx, Int(abs(x)));
        }
    return static_cast<long>(gens.size()) * mx.get_si() * 2;
}

// ---------------------------------------------------------------- verdicts

Verdict is_s2(const MonoidalComplex& mc, std::optional<long> box) {
    Verdict v;
    auto conn = is_1_connected(mc);
    if (!conn.connected) {
        v.value = false;
        v.note = "fan is not 1-connected";
        v.witness = {mc.label(conn.failing_pair->first), mc.label(conn.failing_pair->second)};
        return v;
    }
    if (mc.mode() == SemigroupMode::LatticeFamily) {
        auto c1 = mc.codim1_cones();
        for (std::size_t s = 0; s < mc.cones().size(); ++s) {
            if (mc.codim(s) < 2) continue;
            std::optional<Sublattice> acc;
            for (auto t : c1) {
                if (!mc.is_face(s, t)) continue;
                acc = acc ? lattice_intersect(*acc, mc.lattice(t)) : mc.lattice(t);
            }
            if (acc && *acc != mc.lattice(s)) {
                v.value = false;
                v.note = "Λ_σ = " + mc.lattice(s).str() + " differs from the intersection " + acc->str() +
                         " over codimension one cones";
                v.witness = {mc.label(s)};
                return v;
            }
        }
        return v;
    }
    long n = box.value_or(default_box(mc));
    v.exact = false;
    v.box = n;
    v.note = "verified up to box " + std::to_string(n);
    std::size_t d = mc.rank();
    std::map<std::size_t, S2Closure> closure;
    std::map<std::size_t, Semigroup> semis;
    for (auto f : mc.facets()) {
        closure.emplace(f, S2Closure(d, mc.semigroup_generators(f)));
        semis.emplace(f, Semigroup(d, mc.semigroup_generators(f)));
    }
    for_each_point(filled(d, -n), filled(d, n), [&](const Vec& m) {
        std::vector<std::size_t> fs;
        for (auto f : mc.facets())
            if (mc.cone(f).contains(m)) fs.push_back(f);
        if (fs.empty()) return true;
        for (auto f : fs)
            if (!mc.lattice(f).contains(m) || !closure.at(f).contains(m)) return true;
        if (semis.at(fs.front()).contains(m)) return true;
        v.value = false;
        v.exact = true;
        v.note = "point lies in every S2 closure S'_F but not in S";
        v.point = m;
        v.witness = {str(m)};
        return false;
    });
    return v;
}

Verdict is_seminormal(const MonoidalComplex& mc, std::optional<long> box) {
    Verdict v;
    if (mc.mode() == SemigroupMode::LatticeFamily) {
        v.note = "lattice-family data encodes a seminormal complex";
        return v;
    }
    long n = box.value_or(default_box(mc));
    v.exact = false;
    v.box = n;
    v.note = "verified up to box " + std::to_string(n);
    std::size_t d = mc.rank();
    std::map<std::size_t, Semigroup> semis;
    for (auto f : mc.facets()) semis.emplace(f, Semigroup(d, mc.semigroup_generators(f)));
    for_each_point(filled(d, -n), filled(d, n), [&](const Vec& m) {
        auto s = mc.carrier(to_q(m));
        if (!s || !mc.lattice(*s).contains(m)) return true;
        if (semis.at(mc.facets_containing(*s).front()).contains(m)) return true;
        v.value = false;
        v.exact = true;
        v.note = "point of Λ_σ ∩ relint σ missing from S_σ";
        v.point = m;
        v.witness = {mc.label(*s), str(m)};
        return false;
    });
    return v;
}

Verdict is_weakly_normal(const MonoidalComplex& mc, std::optional<long> box) {
    Verdict sn = is_seminormal(mc, box);
    if (!sn.value) {
        sn.note = "not seminormal: " + sn.note;
        return sn;
    }
    Verdict v = sn;
    v.note = sn.exact ? "" : sn.note;
    unsigned long p = mc.characteristic();
    if (p == 0) return v;
    for (const auto& [key, d] : incidence_table(mc)) {
        if (d % p == 0) {
            v.value = false;
            v.exact = true;
            v.note = "characteristic divides an incidence number";
            v.witness = {mc.label(key.first), mc.label(key.second), d.get_str()};
            return v;
        }
    }
    return v;
}

bool cone_is_normal(const MonoidalComplex& mc, std::size_t sigma, std::vector<std::string>* why) {
    bool ok = true;
    for (auto t : mc.faces_of(sigma)) {
        if (t == sigma) continue;
        Sublattice sat = lattice_intersect(mc.lattice(sigma), mc.cone(t).span());
        bool eq = sat == mc.lattice(t);
        if (why)
            why->push_back(mc.label(t) + (eq ? ": Λ_τ = Λ_σ ∩ span τ" : ": Λ_τ ≠ Λ_σ ∩ span τ = " + sat.str()));
        ok = ok && eq;
    }
    return ok;
}

bool has_normal_components(const MonoidalComplex& mc) {
    for (auto f : mc.facets())
        if (!cone_is_normal(mc, f)) return false;
    return true;
}

std::vector<std::size_t> conductor_fan(const MonoidalComplex& mc) {
    if (mc.mode() != SemigroupMode::LatticeFamily)
        throw Error("PreconditionFailed", "conductor fan needs lattice-family data");
    std::set<std::size_t> out;
    for (std::size_t s = 0; s < mc.cones().size(); ++s) {
        if (mc.is_facet(s)) continue;
        const auto& fs = mc.facets_containing(s);
        bool seed = fs.size() >= 2;
        if (fs.size() == 1) seed = lattice_intersect(mc.lattice(fs[0]), mc.cone(s).span()) != mc.lattice(s);
        if (!seed) continue;
        for (auto t : mc.faces_of(s)) out.insert(t);
    }
    return {out.begin(), out.end()};
}

bool is_conductor_cone(const MonoidalComplex&, const std::vector<std::size_t>& conductor, std::size_t i) {
    return std::binary_search(conductor.begin(), conductor.end(), i);
}

CoreResult core(const MonoidalComplex& mc) {
    if (mc.mode() != SemigroupMode::LatticeFamily)
        throw Error("PreconditionFailed", "core needs lattice-family data");
    Verdict s2 = is_s2(mc);
    if (!s2.value) throw Error("PreconditionFailed", "complex is not S2: " + s2.note);
    auto cond = conductor_fan(mc);
    std::vector<std::size_t> cut = mc.facets();
    for (auto t : cond)
        if (mc.codim(t) == 1) cut.push_back(t);
    CoreResult r;
    r.cone = mc.meet(cut);
    r.normal = cone_is_normal(mc, r.cone, &r.certificate);
    return r;
}

NormalityReport normality_report(const MonoidalComplex& mc, std::optional<long> box) {
    NormalityReport r;
    r.seminormal = is_seminormal(mc, box);
    r.weakly_normal = is_weakly_normal(mc, box);
    r.s2 = is_s2(mc, box);
    r.has_normal_components = has_normal_components(mc);
    r.exact = r.seminormal.exact && r.weakly_normal.exact && r.s2.exact;
    r.box = mc.mode() == SemigroupMode::Generators ? box.value_or(default_box(mc)) : 0;
    return r;
}

}  // namespace tfr
