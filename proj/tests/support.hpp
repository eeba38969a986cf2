#pragma once

#include "tfr/residue.hpp"

#include <functional>
#include <random>
#include <set>

namespace fx {

using namespace tfr;

// ---------------------------------------------------------------- random helpers

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20261014);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Vec random_vec(std::size_t d, long lo, long hi) {
    Vec v(d);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
}

inline Mat random_mat(std::size_t r, std::size_t c, long lo, long hi) {
    Mat m;
    for (std::size_t i = 0; i < r; ++i) m.push_back(random_vec(c, lo, hi));
    return m;
}

/// calls f on every integer point of [lo, hi]^d
inline void grid(std::size_t d, long lo, long hi, const std::function<void(const Vec&)>& f) {
    Vec m(d, lo);
    while (true) {
        f(m);
        std::size_t k = 0;
        while (k < d && m[k] == hi) m[k++] = lo;
        if (k == d) return;
        ++m[k];
    }
}

// ---------------------------------------------------------------- brute-force oracles

/// all N-combinations of nonnegative generators with every coordinate <= bound
inline std::set<Vec> enumerate_nonneg(const Mat& gens, std::size_t d, long bound) {
    std::set<Vec> seen{Vec(d, 0)};
    std::vector<Vec> todo{Vec(d, 0)};
    while (!todo.empty()) {
        Vec p = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            Vec q = add(p, g);
            bool ok = true;
            for (const auto& x : q) ok = ok && x <= bound;
            if (ok && seen.insert(q).second) todo.push_back(q);
        }
    }
    return seen;
}

/// index by counting outer-lattice points in the half-open parallelepiped of the inner basis
inline long brute_index(const Mat& inner, const Mat& outer, long box) {
    std::size_t k = outer.size();
    long count = 0;
    QMat in = to_q(inner);
    Vec c(k, -box);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == k) {
            Vec v(inner.front().size(), 0);
            for (std::size_t j = 0; j < k; ++j) v = add(v, scale(c[j], outer[j]));
            // coordinates of v in the inner basis by Cramer's rule on the first k independent columns
            QMat a(v.size(), QVec(k));
            for (std::size_t r = 0; r < v.size(); ++r)
                for (std::size_t j = 0; j < k; ++j) a[r][j] = in[j][r];
            auto sol = solve_rational(a, to_q(v), k);
            if (!sol.feasible) return;
            for (const auto& x : sol.x)
                if (x < 0 || x >= 1) return;
            ++count;
            return;
        }
        for (c[i] = -box; c[i] <= box; ++c[i]) rec(i + 1);
    };
    rec(0);
    return count;
}

/// p in cone(gens) by Carathéodory: some independent subset expresses p with nonnegative coefficients
inline bool brute_in_cone(const Mat& gens, const Vec& p) {
    if (is_zero(p)) return true;
    std::size_t n = gens.size(), d = p.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Mat sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sub.push_back(gens[i]);
        if (sub.size() > d || rank(sub) != sub.size()) continue;
        QMat a(d, QVec(sub.size()));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t j = 0; j < sub.size(); ++j) a[r][j] = sub[j][r];
        auto sol = solve_rational(a, to_q(p), sub.size());
        if (!sol.feasible) continue;
        bool nonneg = true;
        for (const auto& x : sol.x) nonneg = nonneg && x >= 0;
        if (nonneg) return true;
    }
    return false;
}

/// m in S - S∩τ for every codim-one face τ, searching t ∈ S∩τ with coordinates <= slack.
/// Generators must be nonnegative; points are tested on [0, box]^d.
class BruteS2Closure {
public:
    BruteS2Closure(const Mat& gens, std::size_t d, long box, long slack) : d_(d) {
        s_ = enumerate_nonneg(gens, d, box + slack);
        RationalCone c(d, gens);
        auto fs = facets(c);
        for (const auto& f : fs) {
            Mat in;
            for (const auto& g : gens)
                if (f.contains(g)) in.push_back(g);
            face_points_.push_back(enumerate_nonneg(in, d, slack));
        }
    }
    bool in_s(const Vec& m) const { return s_.count(m) > 0; }
    bool contains(const Vec& m) const {
        for (const auto& tau : face_points_) {
            bool hit = false;
            for (const auto& t : tau)
                if (s_.count(add(m, t))) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
        return true;
    }

private:
    std::size_t d_;
    std::set<Vec> s_;
    std::vector<std::set<Vec>> face_points_;
};

// ---------------------------------------------------------------- fixtures

inline MonoidalComplex from_raw(const RawComplex& r) { return build(r); }

inline RawComplex orthant_raw(std::size_t d) {
    RawComplex r;
    r.rank = d;
    Mat g;
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, 0);
        e[i] = 1;
        g.push_back(e);
    }
    r.maximal_cones = {{"F", g}};
    return r;
}

/// complete fan of Z^2 with rays r0=(1,0), r1=(-1,1), r2=(-1,-1); cycle ratio 1/2 up to sign
inline RawComplex three_facet_raw() {
    RawComplex r;
    r.rank = 2;
    r.maximal_cones = {{"C01", {{1, 0}, {-1, 1}}}, {"C12", {{-1, 1}, {-1, -1}}}, {"C20", {{-1, -1}, {1, 0}}}};
    r.faces = {{"r0", {{1, 0}}}, {"r1", {{-1, 1}}}, {"r2", {{-1, -1}}}};
    r.lattices["C01"] = {{1, 0}, {0, 1}};
    r.lattices["C12"] = {{1, 0}, {0, 1}};
    r.lattices["C20"] = {{2, 0}, {1, 1}};
    r.lattices["r0"] = {{2, 0}};
    r.lattices["r1"] = {{-1, 1}};
    r.lattices["r2"] = {{1, 1}};
    return r;
}

/// the 8 octants of Z^3; the (+,+,+) octant and its faces carry doubled lattices
inline RawComplex octants_raw() {
    RawComplex r;
    r.rank = 3;
    for (int a : {1, -1})
        for (int b : {1, -1})
            for (int c : {1, -1}) {
                std::string id = std::string("O") + (a > 0 ? '+' : '-') + (b > 0 ? '+' : '-') + (c > 0 ? '+' : '-');
                r.maximal_cones.push_back({id, {{a, 0, 0}, {0, b, 0}, {0, 0, c}}});
            }
    r.faces = {{"W12", {{1, 0, 0}, {0, 1, 0}}}, {"W13", {{1, 0, 0}, {0, 0, 1}}}, {"W23", {{0, 1, 0}, {0, 0, 1}}},
               {"R1", {{1, 0, 0}}},           {"R2", {{0, 1, 0}}},           {"R3", {{0, 0, 1}}}};
    r.lattices["O+++"] = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    r.lattices["W12"] = {{2, 0, 0}, {0, 2, 0}};
    r.lattices["W13"] = {{2, 0, 0}, {0, 0, 2}};
    r.lattices["W23"] = {{0, 2, 0}, {0, 0, 2}};
    r.lattices["R1"] = {{2, 0, 0}};
    r.lattices["R2"] = {{0, 2, 0}};
    r.lattices["R3"] = {{0, 0, 2}};
    return r;
}

/// orthant of Z^3 with E1 = cone(e1,e3) of index 4 and Q = R+ e3 of index 2
inline RawComplex glue_fail_raw() {
    RawComplex r = orthant_raw(3);
    r.faces = {{"E1", {{1, 0, 0}, {0, 0, 1}}}, {"E2", {{0, 1, 0}, {0, 0, 1}}}, {"E3", {{1, 0, 0}, {0, 1, 0}}}, {"Q", {{0, 0, 1}}}};
    r.lattices["E1"] = {{2, 0, 0}, {0, 0, 2}};
    r.lattices["Q"] = {{0, 0, 2}};
    return r;
}

/// two quadrants glued along R+ e1; incidence d in A and 1 in B
inline RawComplex two_facet_raw(long d) {
    RawComplex r;
    r.rank = 2;
    r.maximal_cones = {{"A", {{1, 0}, {0, 1}}}, {"B", {{1, 0}, {0, -1}}}};
    r.faces = {{"t", {{1, 0}}}};
    r.lattices["B"] = {{d, 0}, {0, 1}};
    r.lattices["A"] = {{1, 0}, {0, 1}};
    r.lattices["t"] = {{d, 0}};
    return r;
}

/// coefficient 1 on every smooth prime
inline Boundary smooth_boundary(const MonoidalComplex& mc, const Rat& c = 1) {
    Boundary b;
    for (auto t : mc.codim1_cones())
        if (is_smooth_prime(mc, t)) b[t] = c;
    return b;
}

inline std::size_t ref(const MonoidalComplex& mc, const std::string& s) {
    auto i = mc.resolve(s);
    if (!i) throw Error("UnknownConeId", s);
    return *i;
}

}  // namespace fx
