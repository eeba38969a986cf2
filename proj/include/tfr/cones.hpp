#pragma once

#include "tfr/exactlat.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tfr {

struct VRep {
    Mat rays;       // primitive, orthogonal to the lineality space
    Mat lineality;  // saturated integer basis
};

/// Vertex description of {x : a x >= 0} by double description.
VRep hrep_to_vrep(std::size_t d, const Mat& a);

class RationalCone {
public:
    RationalCone() = default;
    /// cone generated by the rows of generators plus the lines spanned by rows of lines
    RationalCone(std::size_t ambient, const Mat& generators, const Mat& lines = {});
    static RationalCone from_inequalities(std::size_t ambient, const Mat& a);
    static RationalCone orthant(std::size_t ambient);

    std::size_t ambient() const { return d_; }
    std::size_t dim() const { return dim_; }
    /// canonical extremal generators, sorted
    const Mat& rays() const { return rays_; }
    const Sublattice& lineality() const { return lineality_; }
    /// primitive normals lying in the span, one per facet, sorted
    const Mat& facet_normals() const { return normals_; }
    /// M ∩ span
    const Sublattice& span() const { return span_; }
    /// integer basis of the orthogonal complement of the span
    const Mat& perp() const { return perp_; }
    /// rays followed by +- lineality basis
    Mat generators() const;

    bool contains(const QVec& p) const;
    bool contains(const Vec& p) const;
    bool relint_contains(const QVec& p) const;
    bool relint_contains(const Vec& p) const;
    bool contains_cone(const RationalCone& other) const;
    bool is_face_of(const RationalCone& parent) const;

    const std::string& id() const { return id_; }
    bool operator==(const RationalCone& o) const { return id_ == o.id_; }
    bool operator!=(const RationalCone& o) const { return id_ != o.id_; }

private:
    std::size_t d_ = 0;
    std::size_t dim_ = 0;
    Mat rays_;
    Sublattice lineality_;
    Mat normals_;
    Sublattice span_;
    Mat perp_;
    std::string id_;
};

/// parses an id of the form produced by RationalCone::id()
std::optional<RationalCone> cone_from_id(std::size_t ambient, const std::string& id);

RationalCone dual_cone(const RationalCone& c);
RationalCone intersect(const RationalCone& a, const RationalCone& b);
/// the face cut out by the generators of c on which all given normals vanish
RationalCone face_cut(const RationalCone& c, const Mat& normals);

struct FacePoset {
    std::vector<RationalCone> faces;  // sorted by codim, then id; faces[0] is the parent
    std::vector<std::size_t> codim;
    std::vector<std::pair<std::size_t, std::size_t>> relation;  // (i, j): faces[i] ⊆ faces[j]
    std::size_t minimal = 0;
    std::optional<std::size_t> find(const RationalCone& c) const;
};

FacePoset faces(const RationalCone& c);
/// codimension one faces
std::vector<RationalCone> facets(const RationalCone& c);
/// primitive e with <e,f> = 0 and <e,c> >= 0; NotAFacet unless f is a facet of c
Vec facet_normal(const RationalCone& c, const RationalCone& f);
bool relint_contains(const RationalCone& c, const QVec& p);
/// the face whose relative interior contains p, or nullopt when p lies outside
std::optional<std::size_t> face_of_relint(const FacePoset& poset, const QVec& p);

}  // namespace tfr
