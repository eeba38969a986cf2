#include "tfr/exactlat.hpp"

#include <utility>

namespace tfr {

namespace {

void row_axpy(Vec& dst, const Int& q, const Vec& src) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

}  // namespace

HermiteForm hnf(const Mat& a, std::size_t cols) {
    HermiteForm out;
    out.H = a;
    out.U = identity(a.size());
    Mat& H = out.H;
    Mat& U = out.U;
    std::size_t m = a.size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m; ++c) {
        while (true) {
            std::size_t best = m;
            for (std::size_t r = row; r < m; ++r) {
                if (H[r][c] == 0) continue;
                if (best == m || abs(H[r][c]) < abs(H[best][c])) best = r;
            }
            if (best == m) break;
            std::swap(H[row], H[best]);
            std::swap(U[row], U[best]);
            bool done = true;
            for (std::size_t r = row + 1; r < m; ++r) {
                if (H[r][c] == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), H[r][c].get_mpz_t(), H[row][c].get_mpz_t());
                row_axpy(H[r], q, H[row]);
                row_axpy(U[r], q, U[row]);
                if (H[r][c] != 0) done = false;
            }
            if (done) break;
        }
        if (H[row][c] == 0) continue;
        if (H[row][c] < 0) {
            H[row] = neg(H[row]);
            U[row] = neg(U[row]);
        }
        for (std::size_t r = 0; r < row; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H[r][c].get_mpz_t(), H[row][c].get_mpz_t());
            if (q == 0) continue;
            row_axpy(H[r], q, H[row]);
            row_axpy(U[r], q, U[row]);
        }
        out.pivots.push_back(c);
        ++row;
    }
    out.rank = row;
    return out;
}

bool is_hnf(const Mat& h, std::size_t cols) {
    std::size_t prev = 0;
    bool first = true;
    bool seen_zero = false;
    for (std::size_t i = 0; i < h.size(); ++i) {
        std::size_t p = 0;
        while (p < cols && h[i][p] == 0) ++p;
        if (p == cols) {
            seen_zero = true;
            continue;
        }
        if (seen_zero) return false;
        if (!first && p <= prev) return false;
        if (h[i][p] < 0) return false;
        for (std::size_t r = 0; r < i; ++r)
            if (h[r][p] < 0 || h[r][p] >= h[i][p]) return false;
        prev = p;
        first = false;
    }
    return true;
}

Mat left_kernel(const Mat& a, std::size_t cols) {
    auto f = hnf(a, cols);
    Mat k(f.U.begin() + static_cast<long>(f.rank), f.U.end());
    auto g = hnf(k, a.size());
    g.H.resize(g.rank);
    return g.H;
}

Mat right_kernel(const Mat& a, std::size_t cols) {
    if (a.empty()) return identity(cols);
    return left_kernel(transpose(a, cols), a.size());
}

std::optional<Vec> solve_left(const Mat& m, const Vec& c, std::size_t cols) {
    auto f = hnf(m, cols);
    Vec res = c;
    Vec z(m.size(), 0);
    for (std::size_t i = 0; i < f.rank; ++i) {
        std::size_t p = f.pivots[i];
        for (std::size_t k = 0; k < p; ++k)
            if (res[k] != 0) return std::nullopt;
        if (res[p] % f.H[i][p] != 0) return std::nullopt;
        z[i] = res[p] / f.H[i][p];
        row_axpy(res, z[i], f.H[i]);
    }
    if (!is_zero(res)) return std::nullopt;
    return row_times(z, f.U, m.size());
}

Sublattice::Sublattice(std::size_t ambient, const Mat& generators) : d_(ambient) {
    auto f = hnf(generators, ambient);
    f.H.resize(f.rank);
    basis_ = std::move(f.H);
    pivots_ = std::move(f.pivots);
}

Sublattice Sublattice::full(std::size_t ambient) { return Sublattice(ambient, identity(ambient)); }

Sublattice Sublattice::zero(std::size_t ambient) { return Sublattice(ambient, {}); }

std::optional<Vec> Sublattice::coordinates(const Vec& v) const {
    Vec res = v;
    Vec z(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::size_t p = pivots_[i];
        if (res[p] % basis_[i][p] != 0) return std::nullopt;
        z[i] = res[p] / basis_[i][p];
        row_axpy(res, z[i], basis_[i]);
    }
    if (!is_zero(res)) return std::nullopt;
    return z;
}

std::optional<QVec> Sublattice::coordinates(const QVec& v) const {
    QVec res = v;
    QVec z(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::size_t p = pivots_[i];
        z[i] = res[p] / Rat(basis_[i][p]);
        for (std::size_t k = 0; k < d_; ++k) res[k] -= z[i] * Rat(basis_[i][k]);
    }
    if (!is_zero(res)) return std::nullopt;
    return z;
}

bool Sublattice::contains(const Vec& v) const { return coordinates(v).has_value(); }

bool Sublattice::contains(const Sublattice& other) const {
    for (const auto& b : other.basis_)
        if (!contains(b)) return false;
    return true;
}

Vec Sublattice::reduce(const Vec& v) const {
    Vec res = v;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::size_t p = pivots_[i];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), res[p].get_mpz_t(), basis_[i][p].get_mpz_t());
        row_axpy(res, q, basis_[i]);
    }
    return res;
}

std::string Sublattice::str() const { return tfr::str(basis_); }

LatticeIndex sublattice_index(const Sublattice& inner, const Sublattice& outer) {
    if (inner.ambient() != outer.ambient() || !outer.contains(inner))
        throw Error("ContainmentViolation", inner.str() + " is not contained in " + outer.str());
    LatticeIndex out;
    if (inner.rank() < outer.rank()) {
        out.infinite = true;
        return out;
    }
    Mat c;
    for (const auto& b : inner.basis()) c.push_back(*outer.coordinates(b));
    out.value = abs(det(c));
    if (inner.rank() == 0) out.value = 1;
    return out;
}

Sublattice lattice_intersect(const Sublattice& a, const Sublattice& b) {
    std::size_t d = a.ambient();
    if (a.rank() == 0 || b.rank() == 0) return Sublattice::zero(d);
    Mat stacked = a.basis();
    for (const auto& r : b.basis()) stacked.push_back(r);
    Mat k = left_kernel(stacked, d);
    Mat gens;
    for (const auto& x : k) {
        Vec y(x.begin(), x.begin() + static_cast<long>(a.rank()));
        gens.push_back(row_times(y, a.basis(), d));
    }
    return Sublattice(d, gens);
}

Mat orthogonal_complement(const Sublattice& a) {
    if (a.rank() == 0) return identity(a.ambient());
    return right_kernel(a.basis(), a.ambient());
}

Sublattice saturation(const Sublattice& a) {
    Mat perp = orthogonal_complement(a);
    return Sublattice(a.ambient(), right_kernel(perp, a.ambient()));
}

Sublattice saturation_in(const Sublattice& a, const Sublattice& b) {
    return lattice_intersect(saturation(a), b);
}

OrientedBasis::OrientedBasis(std::size_t ambient, const Mat& vectors)
    : lattice_(ambient, vectors), vectors_(vectors) {
    if (lattice_.rank() != vectors.size())
        throw Error("DegenerateBasis", "vectors " + str(vectors) + " are linearly dependent");
}

OrientedBasis OrientedBasis::canonical(const Sublattice& l) {
    return OrientedBasis(l.ambient(), l.basis());
}

int orientation_sign(const OrientedBasis& b1, const OrientedBasis& b2) {
    if (b1.lattice() != b2.lattice())
        throw Error("SpanMismatch",
                    b1.lattice().str() + " and " + b2.lattice().str() + " differ");
    const Sublattice& l = b1.lattice();
    Mat c1, c2;
    for (const auto& v : b1.vectors()) c1.push_back(*l.coordinates(v));
    for (const auto& v : b2.vectors()) c2.push_back(*l.coordinates(v));
    if (c1.empty()) return 1;
    int s = sgn(det(c1)) * sgn(det(c2));
    return s;
}

std::optional<Vec> solve_integral(const Mat& a, const Vec& c, const Sublattice& l) {
    std::size_t d = l.ambient();
    std::size_t k = l.rank();
    if (k == 0) {
        if (!is_zero(c)) return std::nullopt;
        return Vec(d, 0);
    }
    // y M = c with M[j][i] = <a_i, l_j>
    Mat m(k, Vec(a.size()));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < a.size(); ++i) m[j][i] = dot(a[i], l.basis()[j]);
    auto y = solve_left(m, c, a.size());
    if (!y) return std::nullopt;
    return row_times(*y, l.basis(), d);
}

}  // namespace tfr
