#include "tfr/mcomplex.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tfr {

// ---------------------------------------------------------------- Semigroup

Semigroup::Semigroup(std::size_t ambient, const Mat& generators) : d_(ambient) {
    for (const auto& g : generators)
        if (!is_zero(g)) gens_.push_back(g);
    cone_ = RationalCone(d_, gens_);
    phi_.assign(d_, 0);
    for (const auto& n : cone_.facet_normals()) phi_ = add(phi_, n);
    Mat units;
    for (const auto& g : gens_) {
        if (dot(phi_, g) == 0)
            units.push_back(g);
        else
            free_.push_back(g);
    }
    units_ = Sublattice(d_, units);
}

bool Semigroup::contains(const Vec& m) const {
    if (m.size() != d_ || !cone_.contains(m)) return false;
    Int f = dot(phi_, m);
    if (f == 0) return units_.contains(m);
    std::string key = str(units_.reduce(m));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool found = false;
    for (const auto& g : free_) {
        if (dot(phi_, g) > f) continue;
        Vec r = sub(m, g);
        if (contains(r)) {
            found = true;
            break;
        }
    }
    memo_.emplace(key, found);
    return found;
}

// ---------------------------------------------------------------- assembly

struct ComplexBuilder {
    static MonoidalComplex assemble(std::size_t d, unsigned long ch, SemigroupMode mode,
                                    const std::vector<RationalCone>& maximal,
                                    const std::map<std::string, std::string>& aliases,
                                    const std::map<std::string, Sublattice>& lattices,
                                    const std::map<std::string, Mat>& gens) {
        MonoidalComplex mc;
        mc.d_ = d;
        mc.char_ = ch;
        mc.mode_ = mode;
        std::map<std::string, RationalCone> all;
        for (const auto& f : maximal)
            for (const auto& g : faces(f).faces) all.emplace(g.id(), g);
        for (auto& [id, c] : all) mc.cones_.push_back(c);
        std::sort(mc.cones_.begin(), mc.cones_.end(), [](const auto& a, const auto& b) {
            if (a.dim() != b.dim()) return a.dim() > b.dim();
            return a.id() < b.id();
        });
        std::size_t n = mc.cones_.size();
        for (std::size_t i = 0; i < n; ++i) mc.by_id_[mc.cones_[i].id()] = i;
        mc.face_.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mc.face_[i][j] = mc.cones_[j].contains_cone(mc.cones_[i]);
        std::set<std::size_t> fs;
        for (const auto& f : maximal) fs.insert(mc.by_id_.at(f.id()));
        mc.facets_.assign(fs.begin(), fs.end());
        mc.dim_ = 0;
        for (auto f : mc.facets_) mc.dim_ = std::max(mc.dim_, mc.cones_[f].dim());
        mc.containing_.assign(n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (auto f : mc.facets_)
                if (mc.face_[i][f]) mc.containing_[i].push_back(f);
        for (const auto& [alias, id] : aliases) {
            auto it = mc.by_id_.find(id);
            if (it != mc.by_id_.end()) mc.aliases_[alias] = it->second;
        }

        mc.lattices_.assign(n, Sublattice::zero(d));
        mc.gens_.assign(n, {});
        if (mode == SemigroupMode::LatticeFamily) {
            for (std::size_t i = 0; i < n; ++i) {
                auto it = lattices.find(mc.cones_[i].id());
                if (it != lattices.end()) {
                    mc.lattices_[i] = it->second;
                } else if (mc.is_facet(i)) {
                    mc.lattices_[i] = mc.cones_[i].span();
                } else {
                    std::optional<Sublattice> acc;
                    for (std::size_t j = 0; j < i; ++j) {
                        if (!mc.face_[i][j] || mc.cones_[j].dim() != mc.cones_[i].dim() + 1) continue;
                        Sublattice part = lattice_intersect(mc.lattices_[j], mc.cones_[i].span());
                        acc = acc ? lattice_intersect(*acc, part) : part;
                    }
                    mc.lattices_[i] = acc ? *acc : mc.cones_[i].span();
                }
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                if (mc.containing_[i].empty()) continue;
                std::size_t f = mc.containing_[i].front();
                const Mat& fg = gens.at(mc.cones_[f].id());
                for (const auto& g : fg)
                    if (mc.cones_[i].contains(g)) mc.gens_[i].push_back(g);
                mc.lattices_[i] = Sublattice(d, mc.gens_[i]);
            }
        }
        return mc;
    }
};

// ---------------------------------------------------------------- queries

bool MonoidalComplex::is_facet(std::size_t i) const {
    return std::binary_search(facets_.begin(), facets_.end(), i);
}

std::vector<std::size_t> MonoidalComplex::faces_of(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cones_.size(); ++j)
        if (face_[j][i]) out.push_back(j);
    return out;
}

std::vector<std::size_t> MonoidalComplex::facets_of(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cones_.size(); ++j)
        if (face_[j][i] && cones_[j].dim() + 1 == cones_[i].dim()) out.push_back(j);
    return out;
}

std::vector<std::size_t> MonoidalComplex::codim1_cones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].dim() + 1 == dim_) out.push_back(i);
    return out;
}

std::optional<std::size_t> MonoidalComplex::find(const RationalCone& c) const {
    auto it = by_id_.find(c.id());
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> MonoidalComplex::resolve(const std::string& ref) const {
    auto a = aliases_.find(ref);
    if (a != aliases_.end()) return a->second;
    auto b = by_id_.find(ref);
    if (b != by_id_.end()) return b->second;
    if (auto c = cone_from_id(d_, ref)) return find(*c);
    return std::nullopt;
}

std::string MonoidalComplex::label(std::size_t i) const {
    for (const auto& [alias, idx] : aliases_)
        if (idx == i) return alias;
    return cones_[i].id();
}

std::size_t MonoidalComplex::meet(const std::vector<std::size_t>& cs) const {
    if (cs.empty()) throw Error("InvalidArgument", "meet of no cones");
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < cones_.size(); ++k) {
        bool all = std::all_of(cs.begin(), cs.end(), [&](std::size_t c) { return face_[k][c]; });
        if (all && (!best || cones_[k].dim() > cones_[*best].dim())) best = k;
    }
    return *best;
}

std::optional<std::size_t> MonoidalComplex::carrier(const QVec& p) const {
    for (std::size_t i = cones_.size(); i-- > 0;)
        if (cones_[i].relint_contains(p)) return i;
    return std::nullopt;
}

MonoidalComplex MonoidalComplex::with_characteristic(unsigned long p) const {
    if (p != 0 && !is_prime(p)) throw Error("InvalidCharacteristic", std::to_string(p) + " is not prime");
    MonoidalComplex out = *this;
    out.char_ = p;
    return out;
}

MonoidalComplex MonoidalComplex::restrict_to(const std::vector<std::size_t>& maximal) const {
    std::vector<RationalCone> top;
    std::set<std::size_t> keep;
    for (auto m : maximal) {
        bool dominated = false;
        for (auto o : maximal)
            if (o != m && face_[m][o]) dominated = true;
        if (!dominated) top.push_back(cones_[m]);
        for (auto f : faces_of(m)) keep.insert(f);
    }
    std::map<std::string, std::string> al;
    for (const auto& [a, i] : aliases_)
        if (keep.count(i)) al[a] = cones_[i].id();
    std::map<std::string, Sublattice> lat;
    std::map<std::string, Mat> gens;
    for (auto i : keep) {
        lat.emplace(cones_[i].id(), lattices_[i]);
        gens.emplace(cones_[i].id(), gens_[i]);
    }
    return ComplexBuilder::assemble(d_, char_, mode_, top, al, lat, gens);
}

MonoidalComplex MonoidalComplex::as_lattice_family() const {
    MonoidalComplex out = *this;
    out.mode_ = SemigroupMode::LatticeFamily;
    out.gens_.assign(cones_.size(), {});
    return out;
}

RawComplex MonoidalComplex::to_raw() const {
    RawComplex raw;
    raw.rank = d_;
    raw.characteristic = char_;
    raw.mode = mode_;
    for (std::size_t i = 0; i < cones_.size(); ++i) {
        RawCone rc{label(i), cones_[i].generators()};
        if (is_facet(i)) {
            raw.maximal_cones.push_back(rc);
            if (mode_ == SemigroupMode::Generators) raw.semigroups[rc.id] = gens_[i];
        } else if (rc.id != cones_[i].id()) {
            raw.faces.push_back(rc);
        }
        if (mode_ == SemigroupMode::LatticeFamily) raw.lattices[rc.id] = lattices_[i].basis();
    }
    return raw;
}

// ---------------------------------------------------------------- validation

namespace {

void push(std::vector<Violation>& v, std::string code, std::string msg, std::vector<std::string> w = {}) {
    v.push_back(Violation{std::move(code), std::move(msg), std::move(w)});
}

}  // namespace

ValidationResult validate(const RawComplex& raw) {
    ValidationResult out;
    auto& vio = out.violations;
    const std::size_t d = raw.rank;
    if (d == 0) push(vio, "MalformedInput", "lattice rank must be positive");
    if (raw.maximal_cones.empty()) push(vio, "MalformedInput", "no maximal cones");
    if (raw.characteristic != 0 && !is_prime(raw.characteristic))
        push(vio, "InvalidCharacteristic", std::to_string(raw.characteristic) + " is neither 0 nor prime");
    if (!vio.empty()) return out;

    std::set<std::string> ids;
    std::vector<RationalCone> top;
    std::map<std::string, std::string> aliases;
    auto make = [&](const RawCone& rc) -> std::optional<RationalCone> {
        if (!ids.insert(rc.id).second) {
            push(vio, "DuplicateId", "cone id used twice", {rc.id});
            return std::nullopt;
        }
        for (const auto& g : rc.generators)
            if (g.size() != d) {
                push(vio, "MalformedInput", "generator " + str(g) + " has wrong length", {rc.id});
                return std::nullopt;
            }
        return RationalCone(d, rc.generators);
    };
    for (const auto& rc : raw.maximal_cones)
        if (auto c = make(rc)) {
            top.push_back(*c);
            aliases[rc.id] = c->id();
        }
    std::vector<std::pair<std::string, RationalCone>> named_faces;
    for (const auto& rc : raw.faces)
        if (auto c = make(rc)) named_faces.emplace_back(rc.id, *c);
    if (!vio.empty()) return out;

    for (std::size_t i = 0; i < top.size(); ++i)
        for (std::size_t j = 0; j < top.size(); ++j) {
            if (i == j) continue;
            if (top[j].contains_cone(top[i]) && (i < j || top[i] != top[j]))
                push(vio, "NonMaximalCone", "listed cone lies inside another listed cone",
                     {raw.maximal_cones[i].id, raw.maximal_cones[j].id});
        }
    for (std::size_t i = 0; i < top.size(); ++i)
        for (std::size_t j = i + 1; j < top.size(); ++j) {
            RationalCone x = intersect(top[i], top[j]);
            if (!x.is_face_of(top[i]) || !x.is_face_of(top[j]))
                push(vio, "FanIntersectionViolation", "intersection " + x.id() + " is not a common face",
                     {raw.maximal_cones[i].id, raw.maximal_cones[j].id});
        }
    if (!vio.empty()) return out;

    std::map<std::string, Sublattice> lat;
    std::map<std::string, Mat> gens;
    MonoidalComplex shape = ComplexBuilder::assemble(d, raw.characteristic, SemigroupMode::LatticeFamily, top,
                                                     aliases, {}, {});
    for (const auto& [alias, c] : named_faces) {
        if (!shape.find(c)) {
            push(vio, "FaceNotInFan", c.id() + " is not a cone of the fan", {alias});
            continue;
        }
        aliases[alias] = c.id();
    }
    if (!vio.empty()) return out;
    shape = ComplexBuilder::assemble(d, raw.characteristic, SemigroupMode::LatticeFamily, top, aliases, {}, {});

    if (raw.mode == SemigroupMode::LatticeFamily) {
        if (!raw.semigroups.empty())
            push(vio, "ModeDataMismatch", "semigroup generators given in lattice-family mode");
        for (const auto& [ref, basis] : raw.lattices) {
            auto idx = shape.resolve(ref);
            if (!idx) {
                push(vio, "UnknownConeId", "lattice given for an unknown cone", {ref});
                continue;
            }
            const RationalCone& c = shape.cone(*idx);
            bool dims = std::all_of(basis.begin(), basis.end(), [&](const Vec& v) { return v.size() == d; });
            if (!dims) {
                push(vio, "MalformedInput", "lattice generator has wrong length", {ref});
                continue;
            }
            Sublattice l(d, basis);
            if (!c.span().contains(l) || l.rank() != c.dim()) {
                push(vio, "LatticeNotFullRank", "Λ " + l.str() + " is not of finite index in M∩span " + c.id(),
                     {ref});
                continue;
            }
            lat.emplace(c.id(), l);
        }
    } else {
        if (!raw.lattices.empty()) push(vio, "ModeDataMismatch", "lattices given in generator mode");
        for (const auto& [ref, g] : raw.semigroups) {
            auto idx = shape.resolve(ref);
            if (!idx) {
                push(vio, "UnknownConeId", "semigroup given for an unknown cone", {ref});
                continue;
            }
            if (!shape.is_facet(*idx)) {
                push(vio, "SemigroupOnNonFacet", "semigroups are given on maximal cones only", {ref});
                continue;
            }
            const RationalCone& c = shape.cone(*idx);
            bool bad = false;
            for (const auto& v : g) {
                if (v.size() != d || !c.contains(v)) {
                    push(vio, "GeneratorOutsideCone", "generator " + str(v) + " not in " + c.id(), {ref});
                    bad = true;
                }
            }
            if (bad) continue;
            if (RationalCone(d, g) != c) {
                push(vio, "GeneratorsDoNotSpanCone", "generators do not generate " + c.id(), {ref});
                continue;
            }
            gens.emplace(c.id(), g);
        }
        for (auto f : shape.facets())
            if (!gens.count(shape.cone(f).id()) && vio.empty())
                push(vio, "MissingSemigroup", "no semigroup for a maximal cone", {shape.label(f)});
    }
    if (!vio.empty()) return out;

    MonoidalComplex mc = ComplexBuilder::assemble(d, raw.characteristic, raw.mode, top, aliases, lat, gens);
    std::size_t n = mc.cones().size();
    if (mc.mode() == SemigroupMode::LatticeFamily) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || !mc.is_face(i, j)) continue;
                if (!mc.lattice(j).contains(mc.lattice(i)))
                    push(vio, "CompatibilityViolation",
                         "Λ " + mc.lattice(i).str() + " not contained in Λ " + mc.lattice(j).str(),
                         {mc.label(i), mc.label(j)});
            }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const auto& fs = mc.facets_containing(i);
            for (std::size_t a = 0; a < fs.size(); ++a)
                for (std::size_t b = 0; b < fs.size(); ++b) {
                    if (a == b) continue;
                    Mat ga, gb;
                    for (const auto& g : gens.at(mc.cone(fs[a]).id()))
                        if (mc.cone(i).contains(g)) ga.push_back(g);
                    for (const auto& g : gens.at(mc.cone(fs[b]).id()))
                        if (mc.cone(i).contains(g)) gb.push_back(g);
                    Semigroup sa(d, ga);
                    for (const auto& g : gb)
                        if (!sa.contains(g)) {
                            push(vio, "RestrictionMismatch",
                                 "facet semigroups restrict differently to " + mc.cone(i).id(),
                                 {mc.label(fs[a]), mc.label(fs[b]), mc.label(i)});
                            break;
                        }
                }
        }
    }
    if (!vio.empty()) return out;
    out.complex = std::move(mc);
    return out;
}

MonoidalComplex build(const RawComplex& raw) {
    auto r = validate(raw);
    if (!r.ok()) {
        const auto& v = r.violations.front();
        std::string w;
        for (const auto& s : v.witness) w += " " + s;
        throw Error("ValidationFailed", v.code + ": " + v.message + w);
    }
    return std::move(*r.complex);
}

// ---------------------------------------------------------------- facet graph

std::vector<std::size_t> FacetGraph::neighbours(std::size_t facet) const {
    std::vector<std::size_t> out;
    for (const auto& e : edges) {
        if (e.a == facet) out.push_back(e.b);
        if (e.b == facet) out.push_back(e.a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::size_t> FacetGraph::edge_label(std::size_t a, std::size_t b) const {
    for (const auto& e : edges)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e.label;
    return std::nullopt;
}

FacetGraph facet_graph(const MonoidalComplex& mc) {
    FacetGraph g;
    g.vertices = mc.facets();
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
            std::size_t a = g.vertices[i], b = g.vertices[j];
            std::size_t m = mc.meet({a, b});
            if (mc.cone(m).dim() + 1 == mc.cone(a).dim() && mc.cone(m).dim() + 1 == mc.cone(b).dim())
                g.edges.push_back({a, b, m});
        }
    return g;
}

ConnectivityCertificate is_1_connected(const MonoidalComplex& mc) {
    ConnectivityCertificate cert;
    FacetGraph g = facet_graph(mc);
    const auto& fs = mc.facets();
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            std::size_t a = fs[i], b = fs[j];
            std::size_t m = mc.meet({a, b});
            std::set<std::size_t> star(mc.facets_containing(m).begin(), mc.facets_containing(m).end());
            std::map<std::size_t, std::size_t> prev;
            std::deque<std::size_t> q{a};
            prev[a] = a;
            while (!q.empty() && !prev.count(b)) {
                std::size_t x = q.front();
                q.pop_front();
                for (auto y : g.neighbours(x))
                    if (star.count(y) && !prev.count(y)) {
                        prev[y] = x;
                        q.push_back(y);
                    }
            }
            if (!prev.count(b)) {
                cert.connected = false;
                cert.failing_pair = std::make_pair(a, b);
                cert.chains.clear();
                return cert;
            }
            std::vector<std::size_t> chain{b};
            while (chain.back() != a) chain.push_back(prev[chain.back()]);
            std::reverse(chain.begin(), chain.end());
            cert.chains.push_back(chain);
        }
    return cert;
}

bool semigroup_contains(const MonoidalComplex& mc, std::size_t cone, const Vec& m) {
    const RationalCone& c = mc.cone(cone);
    if (m.size() != mc.rank() || !c.contains(m)) return false;
    if (is_zero(m)) return true;
    if (mc.mode() == SemigroupMode::LatticeFamily) {
        auto s = mc.carrier(to_q(m));
        return s && mc.lattice(*s).contains(m);
    }
    return Semigroup(mc.rank(), mc.semigroup_generators(cone)).contains(m);
}

// ---------------------------------------------------------------- builders

namespace {

std::string subset_id(const std::vector<std::size_t>& s, const char* prefix) {
    if (s.empty()) return "0";
    std::string id;
    for (auto v : s) id += prefix + std::to_string(v);
    return id;
}

Mat basis_rows(std::size_t n, const std::vector<std::size_t>& s) {
    Mat m;
    for (auto v : s) {
        Vec e(n, 0);
        e[v - 1] = 1;
        m.push_back(e);
    }
    return m;
}

}  // namespace

RawComplex coordinate_arrangement_raw(std::size_t n, std::size_t p) {
    if (n == 0 || p > n) throw Error("InvalidArgument", "need n >= 1 and 0 <= p <= n");
    RawComplex raw;
    raw.rank = n;
    raw.mode = SemigroupMode::LatticeFamily;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ul << i)) s.push_back(i + 1);
        if (s.size() > n - p) continue;
        RawCone rc{subset_id(s, "e"), basis_rows(n, s)};
        if (s.size() == n - p)
            raw.maximal_cones.push_back(rc);
        else
            raw.faces.push_back(rc);
    }
    return raw;
}

MonoidalComplex coordinate_arrangement(std::size_t n, std::size_t p) { return build(coordinate_arrangement_raw(n, p)); }

RawComplex stanley_reisner_raw(std::size_t n, const std::vector<std::vector<std::size_t>>& facets) {
    RawComplex raw;
    raw.rank = n;
    raw.mode = SemigroupMode::LatticeFamily;
    std::set<std::vector<std::size_t>> all_faces;
    for (const auto& f : facets) {
        std::vector<std::size_t> s = f;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error("NotSimplicial", "facet repeats a vertex");
        for (auto v : s)
            if (v == 0 || v > n) throw Error("NotSimplicial", "vertex " + std::to_string(v) + " out of range");
        raw.maximal_cones.push_back({subset_id(s, "v"), basis_rows(n, s)});
        for (unsigned long mask = 0; mask + 1 < (1ul << s.size()); ++mask) {
            std::vector<std::size_t> t;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (1ul << i)) t.push_back(s[i]);
            all_faces.insert(t);
        }
    }
    std::set<std::string> top;
    for (const auto& rc : raw.maximal_cones) top.insert(rc.id);
    for (const auto& t : all_faces)
        if (!top.count(subset_id(t, "v"))) raw.faces.push_back({subset_id(t, "v"), basis_rows(n, t)});
    return raw;
}

MonoidalComplex stanley_reisner(std::size_t n, const std::vector<std::vector<std::size_t>>& facets) {
    return build(stanley_reisner_raw(n, facets));
}

RawComplex cusp_cone_raw() {
    RawComplex raw;
    raw.rank = 2;
    raw.mode = SemigroupMode::LatticeFamily;
    raw.maximal_cones.push_back({"sigma", {{1, 0}, {1, 2}}});
    raw.faces.push_back({"tau1", {{1, 0}}});
    raw.faces.push_back({"tau2", {{1, 2}}});
    raw.faces.push_back({"origin", {}});
    return raw;
}

MonoidalComplex cusp_cone() { return build(cusp_cone_raw()); }

}  // namespace tfr
