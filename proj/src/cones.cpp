#include "tfr/cones.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace tfr {

namespace {

void sort_unique(Mat& m) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
}

// Extreme rays of the pointed cone {y : a y >= 0}, rank(a) = r.
Mat double_description(const Mat& a, std::size_t r) {
    std::vector<std::size_t> init = independent_rows(a);
    QMat a0;
    for (std::size_t i : init) a0.push_back(to_q(a[i]));
    QMat inv = *inverse(a0);
    Mat rays;
    for (std::size_t j = 0; j < r; ++j) {
        QVec col(r);
        for (std::size_t i = 0; i < r; ++i) col[i] = inv[i][j];
        rays.push_back(primitive(col));
    }
    std::vector<std::size_t> active = init;
    std::vector<bool> used(a.size(), false);
    for (std::size_t i : init) used[i] = true;

    for (std::size_t i = 0; i < a.size(); ++i) {
        if (used[i]) continue;
        const Vec& row = a[i];
        Mat pos, zer, negs;
        std::vector<Int> pv, nv;
        for (const auto& y : rays) {
            Int v = dot(row, y);
            if (v > 0) {
                pos.push_back(y);
                pv.push_back(v);
            } else if (v == 0) {
                zer.push_back(y);
            } else {
                negs.push_back(y);
                nv.push_back(v);
            }
        }
        Mat next = pos;
        next.insert(next.end(), zer.begin(), zer.end());
        if (r >= 2) {
            for (std::size_t p = 0; p < pos.size(); ++p) {
                for (std::size_t n = 0; n < negs.size(); ++n) {
                    Mat tight;
                    for (std::size_t j : active)
                        if (dot(a[j], pos[p]) == 0 && dot(a[j], negs[n]) == 0) tight.push_back(a[j]);
                    if (rank(tight) != r - 2) continue;
                    Vec c(r);
                    for (std::size_t k = 0; k < r; ++k) c[k] = pv[p] * negs[n][k] - nv[n] * pos[p][k];
                    next.push_back(primitive(c));
                }
            }
        }
        rays = std::move(next);
        sort_unique(rays);
        active.push_back(i);
        used[i] = true;
    }
    return rays;
}

std::string join_rows(const Mat& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ";";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (j) s += ",";
            s += m[i][j].get_str();
        }
    }
    return s;
}

}  // namespace

VRep hrep_to_vrep(std::size_t d, const Mat& a0) {
    Mat a;
    for (const auto& row : a0)
        if (!is_zero(row)) a.push_back(row);
    VRep out;
    out.lineality = right_kernel(a, d);
    if (a.empty()) return out;
    Mat bw;
    for (std::size_t i : independent_rows(a)) bw.push_back(a[i]);
    std::size_t r = bw.size();
    Mat ap(a.size(), Vec(r));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) ap[i][j] = dot(a[i], bw[j]);
    for (const auto& y : double_description(ap, r)) out.rays.push_back(primitive(row_times(y, bw, d)));
    sort_unique(out.rays);
    return out;
}

RationalCone::RationalCone(std::size_t ambient, const Mat& generators, const Mat& lines) : d_(ambient) {
    Mat g;
    for (const auto& v : generators) {
        if (v.size() != ambient) throw Error("DimensionMismatch", "generator " + str(v));
        if (!is_zero(v)) g.push_back(primitive(v));
    }
    for (const auto& v : lines) {
        if (v.size() != ambient) throw Error("DimensionMismatch", "line " + str(v));
        if (is_zero(v)) continue;
        g.push_back(primitive(v));
        g.push_back(neg(primitive(v)));
    }
    VRep dual = hrep_to_vrep(d_, g);
    normals_ = dual.rays;
    perp_ = dual.lineality;
    span_ = Sublattice(d_, right_kernel(perp_, d_));
    dim_ = d_ - perp_.size();
    Mat ineq = normals_;
    for (const auto& p : perp_) {
        ineq.push_back(p);
        ineq.push_back(neg(p));
    }
    VRep self = hrep_to_vrep(d_, ineq);
    rays_ = self.rays;
    lineality_ = Sublattice(d_, self.lineality);
    id_ = "cone(" + join_rows(rays_);
    if (lineality_.rank() > 0) id_ += "|" + join_rows(lineality_.basis());
    id_ += ")";
}

RationalCone RationalCone::from_inequalities(std::size_t ambient, const Mat& a) {
    VRep v = hrep_to_vrep(ambient, a);
    return RationalCone(ambient, v.rays, v.lineality);
}

RationalCone RationalCone::orthant(std::size_t ambient) { return RationalCone(ambient, identity(ambient)); }

Mat RationalCone::generators() const {
    Mat g = rays_;
    for (const auto& l : lineality_.basis()) {
        g.push_back(l);
        g.push_back(neg(l));
    }
    return g;
}

bool RationalCone::contains(const QVec& p) const {
    for (const auto& q : perp_)
        if (dot(q, p) != 0) return false;
    for (const auto& n : normals_)
        if (dot(n, p) < 0) return false;
    return true;
}

bool RationalCone::contains(const Vec& p) const {
    for (const auto& q : perp_)
        if (dot(q, p) != 0) return false;
    for (const auto& n : normals_)
        if (dot(n, p) < 0) return false;
    return true;
}

bool RationalCone::relint_contains(const QVec& p) const {
    for (const auto& q : perp_)
        if (dot(q, p) != 0) return false;
    for (const auto& n : normals_)
        if (dot(n, p) <= 0) return false;
    return true;
}

bool RationalCone::relint_contains(const Vec& p) const { return relint_contains(to_q(p)); }

bool RationalCone::contains_cone(const RationalCone& other) const {
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    return true;
}

bool RationalCone::is_face_of(const RationalCone& parent) const {
    if (d_ != parent.d_ || !parent.contains_cone(*this)) return false;
    Mat tight;
    Mat gens = generators();
    for (const auto& n : parent.facet_normals()) {
        bool all = true;
        for (const auto& g : gens)
            if (dot(n, g) != 0) {
                all = false;
                break;
            }
        if (all) tight.push_back(n);
    }
    return face_cut(parent, tight).id() == id_;
}

std::optional<RationalCone> cone_from_id(std::size_t ambient, const std::string& id) {
    if (id.size() < 6 || id.rfind("cone(", 0) != 0 || id.back() != ')') return std::nullopt;
    std::string body = id.substr(5, id.size() - 6);
    auto parse_rows = [&](const std::string& s, Mat& out) {
        if (s.empty()) return true;
        std::stringstream rows(s);
        std::string row;
        while (std::getline(rows, row, ';')) {
            Vec v;
            std::stringstream ents(row);
            std::string e;
            while (std::getline(ents, e, ',')) {
                try {
                    v.push_back(parse_integer(e));
                } catch (const Error&) {
                    return false;
                }
            }
            if (v.size() != ambient) return false;
            out.push_back(v);
        }
        return true;
    };
    Mat rays, lines;
    auto bar = body.find('|');
    if (!parse_rows(body.substr(0, bar), rays)) return std::nullopt;
    if (bar != std::string::npos && !parse_rows(body.substr(bar + 1), lines)) return std::nullopt;
    return RationalCone(ambient, rays, lines);
}

RationalCone dual_cone(const RationalCone& c) { return RationalCone(c.ambient(), c.facet_normals(), c.perp()); }

RationalCone intersect(const RationalCone& a, const RationalCone& b) {
    Mat ineq = a.facet_normals();
    ineq.insert(ineq.end(), b.facet_normals().begin(), b.facet_normals().end());
    for (const auto* c : {&a, &b})
        for (const auto& p : c->perp()) {
            ineq.push_back(p);
            ineq.push_back(neg(p));
        }
    return RationalCone::from_inequalities(a.ambient(), ineq);
}

RationalCone face_cut(const RationalCone& c, const Mat& normals) {
    Mat keep;
    for (const auto& g : c.generators()) {
        bool ok = true;
        for (const auto& n : normals)
            if (dot(n, g) != 0) {
                ok = false;
                break;
            }
        if (ok) keep.push_back(g);
    }
    return RationalCone(c.ambient(), keep);
}

std::optional<std::size_t> FacePoset::find(const RationalCone& c) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i] == c) return i;
    return std::nullopt;
}

std::vector<RationalCone> facets(const RationalCone& c) {
    std::vector<RationalCone> out;
    for (const auto& n : c.facet_normals()) out.push_back(face_cut(c, {n}));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.id() < y.id(); });
    return out;
}

FacePoset faces(const RationalCone& c) {
    std::map<std::string, RationalCone> seen;
    std::deque<RationalCone> todo{c};
    seen.emplace(c.id(), c);
    while (!todo.empty()) {
        RationalCone f = todo.front();
        todo.pop_front();
        for (auto& g : facets(f)) {
            if (seen.count(g.id())) continue;
            seen.emplace(g.id(), g);
            todo.push_back(g);
        }
    }
    FacePoset out;
    for (auto& [id, f] : seen) out.faces.push_back(f);
    std::sort(out.faces.begin(), out.faces.end(), [&](const auto& x, const auto& y) {
        if (x.dim() != y.dim()) return x.dim() > y.dim();
        return x.id() < y.id();
    });
    for (const auto& f : out.faces) out.codim.push_back(c.dim() - f.dim());
    for (std::size_t i = 0; i < out.faces.size(); ++i)
        for (std::size_t j = 0; j < out.faces.size(); ++j)
            if (out.faces[j].contains_cone(out.faces[i])) out.relation.emplace_back(i, j);
    out.minimal = out.faces.size() - 1;
    return out;
}

Vec facet_normal(const RationalCone& c, const RationalCone& f) {
    if (f.dim() + 1 != c.dim() || !f.is_face_of(c))
        throw Error("NotAFacet", f.id() + " is not a facet of " + c.id());
    Mat gens = f.generators();
    for (const auto& n : c.facet_normals()) {
        bool all = true;
        for (const auto& g : gens)
            if (dot(n, g) != 0) {
                all = false;
                break;
            }
        if (all) return n;
    }
    throw Error("NotAFacet", f.id() + " has no supporting normal in " + c.id());
}

bool relint_contains(const RationalCone& c, const QVec& p) { return c.relint_contains(p); }

std::optional<std::size_t> face_of_relint(const FacePoset& poset, const QVec& p) {
    if (poset.faces.empty() || !poset.faces[0].contains(p)) return std::nullopt;
    for (std::size_t i = 0; i < poset.faces.size(); ++i)
        if (poset.faces[i].relint_contains(p)) return i;
    return std::nullopt;
}

}  // namespace tfr
