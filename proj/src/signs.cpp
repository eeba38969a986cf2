#include "tfr/signs.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace tfr {

namespace {

Int mod_inverse(const Int& a, unsigned long p) {
    Int r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), Int(p).get_mpz_t());
    return r;
}

Int reduce_mod(const Int& a, unsigned long p) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    return r;
}

int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

QVec coords(const Sublattice& l, const Vec& v) {
    auto c = l.coordinates(to_q(v));
    if (!c) throw Error("SpanMismatch", "vector " + str(v) + " not in span of " + l.str());
    return *c;
}

RationalCone local_cone(const Sublattice& l, const RationalCone& c) {
    Mat rays, lines;
    for (const auto& r : c.rays()) rays.push_back(primitive(coords(l, r)));
    for (const auto& v : c.lineality().basis()) lines.push_back(primitive(coords(l, v)));
    return RationalCone(l.rank(), rays, lines);
}

}  // namespace

// ---------------------------------------------------------------- Unit

Unit::Unit(unsigned long p, const Rat& value) : p_(p) {
    Rat x(value.get_num(), value.get_den());
    x.canonicalize();
    if (p == 0) {
        if (x == 0) throw Error("NotAUnit", "zero scalar");
        q_ = x;
        return;
    }
    Int num = reduce_mod(x.get_num(), p), den = reduce_mod(x.get_den(), p);
    if (num == 0 || den == 0) throw Error("NotAUnit", tfr::str(x) + " vanishes mod " + std::to_string(p));
    q_ = Rat(reduce_mod(num * mod_inverse(den, p), p));
}

Unit Unit::operator*(const Unit& o) const { return Unit(p_, q_ * o.q_); }

Unit Unit::inverse() const { return Unit(p_, 1 / q_); }

Unit Unit::pow(long n) const {
    Unit base = n < 0 ? inverse() : *this;
    unsigned long e = n < 0 ? -static_cast<unsigned long>(n) : n;
    Unit acc = one(p_);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

unsigned long Unit::order() const {
    if (p_ == 0) {
        if (q_ == 1) return 1;
        if (q_ == -1) return 2;
        return 0;
    }
    Unit x = *this;
    for (unsigned long k = 1; k < p_; ++k) {
        if (x.is_one()) return k;
        x = x * *this;
    }
    return p_ - 1;
}

std::string Unit::str() const { return tfr::str(q_); }

// ---------------------------------------------------------------- frames and signs

LocalFrame local_frame(const MonoidalComplex& mc, std::size_t child, std::size_t parent) {
    const Sublattice& l = mc.lattice(parent);
    RationalCone big = local_cone(l, mc.cone(parent));
    RationalCone small = local_cone(l, mc.cone(child));
    LocalFrame fr;
    fr.basis = l.basis();
    fr.normal = facet_normal(big, small);
    std::size_t k = l.rank(), d = mc.rank();
    QMat gram(k, QVec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = Rat(dot(fr.basis[i], fr.basis[j]));
    auto z = solve_rational(gram, to_q(fr.normal), k);
    fr.functional.assign(d, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < d; ++c) fr.functional[c] += z.x[i] * fr.basis[i][c];
    return fr;
}

int residue_sign(const MonoidalComplex& mc, std::size_t parent, std::size_t child, const Mat* child_basis) {
    const Sublattice& l = mc.lattice(parent);
    LocalFrame fr = local_frame(mc, child, parent);
    std::size_t k = l.rank();
    auto u = solve_integral(Mat{fr.normal}, Vec{1}, Sublattice::full(k));
    if (!u) throw Error("NoUnitPairing", "no u in Λ_F with <e,u> = 1");
    Mat w = child_basis ? *child_basis : lattice_intersect(l, mc.cone(child).span()).basis();
    QMat rest;
    for (const auto& v : w) rest.push_back(coords(l, v));
    auto sign_with = [&](const QVec& uc) {
        QMat m{uc};
        m.insert(m.end(), rest.begin(), rest.end());
        return sign_of(det(m));
    };
    QVec u1 = to_q(*u);
    int s = sign_with(u1);
    if (s == 0) throw Error("DegenerateBasis", "child basis does not span a facet of the frame");
    if (!w.empty()) {
        QVec u2 = u1;
        QVec shift = coords(l, lattice_intersect(l, mc.cone(child).span()).basis().front());
        for (std::size_t i = 0; i < k; ++i) u2[i] += shift[i];
        if (sign_with(u2) != s) throw Error("InternalError", "residue sign depends on the choice of u");
    }
    return s;
}

Int incidence(const MonoidalComplex& mc, std::size_t child, std::size_t parent) {
    Sublattice outer = lattice_intersect(mc.lattice(parent), mc.cone(child).span());
    return sublattice_index(mc.lattice(child), outer).value;
}

Int signed_incidence(const MonoidalComplex& mc, std::size_t child, std::size_t parent) {
    const Mat& t = mc.lattice(child).basis();
    return residue_sign(mc, parent, child, &t) * incidence(mc, child, parent);
}

// ---------------------------------------------------------------- spanning trees

SpanningTree spanning_tree(const MonoidalComplex& mc, TreeVariant variant) {
    FacetGraph g = facet_graph(mc);
    SpanningTree t;
    if (mc.facets().empty()) return t;
    t.root = mc.facets().front();
    std::set<std::size_t> seen{t.root};
    std::set<std::pair<std::size_t, std::size_t>> used;
    auto take = [&](std::size_t from, std::size_t to) {
        seen.insert(to);
        t.parent[to] = {from, *g.edge_label(from, to)};
        used.insert({std::min(from, to), std::max(from, to)});
        t.order.push_back(to);
    };
    t.order.push_back(t.root);
    if (variant == TreeVariant::Bfs) {
        std::deque<std::size_t> q{t.root};
        while (!q.empty()) {
            auto f = q.front();
            q.pop_front();
            for (auto n : g.neighbours(f))
                if (!seen.count(n)) {
                    take(f, n);
                    q.push_back(n);
                }
        }
    } else {
        std::vector<std::size_t> stack{t.root};
        while (!stack.empty()) {
            auto f = stack.back();
            auto ns = g.neighbours(f);
            std::reverse(ns.begin(), ns.end());
            bool moved = false;
            for (auto n : ns)
                if (!seen.count(n)) {
                    take(f, n);
                    stack.push_back(n);
                    moved = true;
                    break;
                }
            if (!moved) stack.pop_back();
        }
    }
    for (const auto& e : g.edges)
        if (!used.count({e.a, e.b})) t.chords.push_back(e);
    return t;
}

std::vector<std::size_t> tree_path(const SpanningTree& t, std::size_t f) {
    std::vector<std::size_t> path{f};
    while (path.back() != t.root) {
        auto it = t.parent.find(path.back());
        if (it == t.parent.end()) throw Error("NotConnected", "facet outside the spanning tree");
        path.push_back(it->second.first);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace tfr
