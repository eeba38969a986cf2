#pragma once

#include "tfr/arith.hpp"

namespace tfr {

struct HermiteForm {
    Mat H;  // row HNF, zero rows trailing
    Mat U;  // unimodular, U * input = H
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Row Hermite normal form: nonnegative pivots, entries above a pivot reduced mod the pivot.
HermiteForm hnf(const Mat& a, std::size_t cols);
bool is_hnf(const Mat& h, std::size_t cols);

/// Saturated integer basis (HNF) of {y : y a = 0}.
Mat left_kernel(const Mat& a, std::size_t cols);
/// Saturated integer basis (HNF) of {x : a x = 0}.
Mat right_kernel(const Mat& a, std::size_t cols);
/// Some integer y with y m = c, if one exists.
std::optional<Vec> solve_left(const Mat& m, const Vec& c, std::size_t cols);

class Sublattice {
public:
    Sublattice() = default;
    Sublattice(std::size_t ambient, const Mat& generators);
    static Sublattice full(std::size_t ambient);
    static Sublattice zero(std::size_t ambient);

    std::size_t ambient() const { return d_; }
    std::size_t rank() const { return basis_.size(); }
    const Mat& basis() const { return basis_; }

    bool contains(const Vec& v) const;
    bool contains(const Sublattice& other) const;
    /// integer coordinates with respect to basis()
    std::optional<Vec> coordinates(const Vec& v) const;
    /// rational coordinates of a vector in the rational span
    std::optional<QVec> coordinates(const QVec& v) const;
    /// canonical representative of v modulo the lattice
    Vec reduce(const Vec& v) const;

    bool operator==(const Sublattice& o) const { return d_ == o.d_ && basis_ == o.basis_; }
    bool operator!=(const Sublattice& o) const { return !(*this == o); }
    std::string str() const;

private:
    std::size_t d_ = 0;
    Mat basis_;
    std::vector<std::size_t> pivots_;
};

struct LatticeIndex {
    bool infinite = false;
    Int value = 0;
};

LatticeIndex sublattice_index(const Sublattice& inner, const Sublattice& outer);
Sublattice lattice_intersect(const Sublattice& a, const Sublattice& b);
/// M ∩ (Q-span of the lattice)
Sublattice saturation(const Sublattice& a);
/// saturation of a inside b, i.e. b ∩ span(a)
Sublattice saturation_in(const Sublattice& a, const Sublattice& b);
/// integer basis of the orthogonal complement
Mat orthogonal_complement(const Sublattice& a);

class OrientedBasis {
public:
    OrientedBasis() = default;
    /// vectors must be linearly independent; DegenerateBasis otherwise
    OrientedBasis(std::size_t ambient, const Mat& vectors);
    static OrientedBasis canonical(const Sublattice& l);

    const Sublattice& lattice() const { return lattice_; }
    const Mat& vectors() const { return vectors_; }

private:
    Sublattice lattice_;
    Mat vectors_;
};

/// sign of the change of basis between two oriented bases of one sublattice
int orientation_sign(const OrientedBasis& b1, const OrientedBasis& b2);

/// Some m in l with a m = c, or nullopt when none exists.
std::optional<Vec> solve_integral(const Mat& a, const Vec& c, const Sublattice& l);

}  // namespace tfr
