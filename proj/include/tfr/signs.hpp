#pragma once

#include "tfr/mcomplex.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tfr {

/// Nonzero scalar of k: Q when p = 0, F_p otherwise.
class Unit {
public:
    Unit() = default;
    /// NotAUnit when x vanishes in k
    Unit(unsigned long p, const Rat& x);
    static Unit one(unsigned long p) { return Unit(p, Rat(1)); }

    unsigned long characteristic() const { return p_; }
    Unit operator*(const Unit& o) const;
    Unit inverse() const;
    Unit pow(long n) const;
    bool operator==(const Unit& o) const { return p_ == o.p_ && q_ == o.q_; }
    bool operator!=(const Unit& o) const { return !(*this == o); }
    bool is_one() const { return q_ == 1; }
    /// multiplicative order; 0 when infinite
    unsigned long order() const;
    /// the rational value (char 0) or the residue in [1, p)
    const Rat& value() const { return q_; }
    std::string str() const;

private:
    unsigned long p_ = 0;
    Rat q_ = 1;
};

/// Λ_parent in its HNF basis B, and the primitive inward normal of a codimension one face
struct LocalFrame {
    Mat basis;          // rows of B
    Vec normal;         // e in Λ_parent^* coordinates
    QVec functional;    // the same e as a functional on span(parent)
};

/// child must be a codimension one face of parent
LocalFrame local_frame(const MonoidalComplex& mc, std::size_t child, std::size_t parent);

/// ε of (u, oriented child basis) against the HNF orientation of Λ_parent, with <e,u> = 1.
/// child_basis defaults to the HNF basis of Λ_parent ∩ span(child).
int residue_sign(const MonoidalComplex& mc, std::size_t parent, std::size_t child, const Mat* child_basis = nullptr);

/// [Λ_parent ∩ span child : Λ_child]
Int incidence(const MonoidalComplex& mc, std::size_t child, std::size_t parent);
/// ε d with the HNF orientation of Λ_child
Int signed_incidence(const MonoidalComplex& mc, std::size_t child, std::size_t parent);

enum class TreeVariant { Bfs, ReverseDfs };

struct SpanningTree {
    std::size_t root = 0;
    /// facet -> (parent facet, shared codimension one cone)
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> parent;
    std::vector<std::size_t> order;
    std::vector<FacetGraph::Edge> chords;
};

SpanningTree spanning_tree(const MonoidalComplex& mc, TreeVariant variant = TreeVariant::Bfs);
/// facets from the root to f
std::vector<std::size_t> tree_path(const SpanningTree& t, std::size_t f);

}  // namespace tfr
