#pragma once

#include "tfr/cones.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tfr {

enum class SemigroupMode { Generators, LatticeFamily };

struct RawCone {
    std::string id;
    Mat generators;
};

/// Unvalidated complex description, as read from a document.
struct RawComplex {
    std::size_t rank = 0;
    unsigned long characteristic = 0;
    SemigroupMode mode = SemigroupMode::LatticeFamily;
    std::vector<RawCone> maximal_cones;
    std::vector<RawCone> faces;               // optional aliases for non-maximal cones
    std::map<std::string, Mat> semigroups;    // generator mode: facet id -> generators of S_F
    std::map<std::string, Mat> lattices;      // lattice family: cone id -> generators of Λ_σ
};

struct Violation {
    std::string code;
    std::string message;
    std::vector<std::string> witness;
};

/// Finitely generated semigroup with exact membership.
/// Not safe for concurrent use: membership answers are memoized.
class Semigroup {
public:
    Semigroup(std::size_t ambient, const Mat& generators);
    bool contains(const Vec& m) const;
    const RationalCone& cone() const { return cone_; }
    const Mat& generators() const { return gens_; }
    /// the group generated by the generators lying in the lineality space
    const Sublattice& unit_group() const { return units_; }

private:
    std::size_t d_;
    Mat gens_;
    RationalCone cone_;
    Sublattice units_;
    Mat free_;
    Vec phi_;
    mutable std::unordered_map<std::string, bool> memo_;
};

class MonoidalComplex {
public:
    std::size_t rank() const { return d_; }
    unsigned long characteristic() const { return char_; }
    SemigroupMode mode() const { return mode_; }

    /// all fan cones, sorted by dimension (descending) then canonical id
    const std::vector<RationalCone>& cones() const { return cones_; }
    const RationalCone& cone(std::size_t i) const { return cones_[i]; }
    const std::vector<std::size_t>& facets() const { return facets_; }
    bool is_facet(std::size_t i) const;
    /// maximal facet dimension
    std::size_t dim() const { return dim_; }
    std::size_t codim(std::size_t i) const { return dim_ - cones_[i].dim(); }
    /// cone i is a face of cone j
    bool is_face(std::size_t i, std::size_t j) const { return face_[i][j]; }
    const std::vector<std::size_t>& facets_containing(std::size_t i) const { return containing_[i]; }
    /// faces of cone i (including i)
    std::vector<std::size_t> faces_of(std::size_t i) const;
    /// codimension one faces of cone i
    std::vector<std::size_t> facets_of(std::size_t i) const;
    /// cones of codimension one
    std::vector<std::size_t> codim1_cones() const;

    /// Λ_σ; derived as S_σ - S_σ in generator mode
    const Sublattice& lattice(std::size_t i) const { return lattices_[i]; }
    /// generator mode only: generators of S_σ
    const Mat& semigroup_generators(std::size_t i) const { return gens_[i]; }

    std::optional<std::size_t> find(const RationalCone& c) const;
    /// alias or canonical id
    std::optional<std::size_t> resolve(const std::string& ref) const;
    std::string label(std::size_t i) const;
    const std::map<std::string, std::size_t>& aliases() const { return aliases_; }
    /// the fan cone equal to the intersection of the given cones
    std::size_t meet(const std::vector<std::size_t>& cs) const;
    /// smallest cone containing the point, nullopt if outside the support
    std::optional<std::size_t> carrier(const QVec& p) const;

    MonoidalComplex with_characteristic(unsigned long p) const;
    /// subcomplex generated by the given cones, carrying the same lattices
    MonoidalComplex restrict_to(const std::vector<std::size_t>& maximal) const;
    /// re-encode a generator-mode complex by its derived lattices (meaningful when seminormal)
    MonoidalComplex as_lattice_family() const;
    RawComplex to_raw() const;

private:
    friend struct ComplexBuilder;
    std::size_t d_ = 0;
    unsigned long char_ = 0;
    SemigroupMode mode_ = SemigroupMode::LatticeFamily;
    std::vector<RationalCone> cones_;
    std::vector<std::size_t> facets_;
    std::size_t dim_ = 0;
    std::vector<std::vector<bool>> face_;
    std::vector<std::vector<std::size_t>> containing_;
    std::vector<Sublattice> lattices_;
    std::vector<Mat> gens_;
    std::map<std::string, std::size_t> aliases_;
    std::map<std::string, std::size_t> by_id_;
};

struct ValidationResult {
    std::optional<MonoidalComplex> complex;
    std::vector<Violation> violations;
    bool ok() const { return complex.has_value(); }
};

ValidationResult validate(const RawComplex& raw);
/// validate, raising ValidationFailed with the first violation
MonoidalComplex build(const RawComplex& raw);

struct FacetGraph {
    struct Edge {
        std::size_t a, b;   // facet cone indices, a < b
        std::size_t label;  // shared codimension one cone
    };
    std::vector<std::size_t> vertices;
    std::vector<Edge> edges;
    std::vector<std::size_t> neighbours(std::size_t facet) const;
    std::optional<std::size_t> edge_label(std::size_t a, std::size_t b) const;
};

FacetGraph facet_graph(const MonoidalComplex& mc);

struct ConnectivityCertificate {
    bool connected = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
    /// for every facet pair, a chain of facets through the star of their intersection
    std::vector<std::vector<std::size_t>> chains;
};

ConnectivityCertificate is_1_connected(const MonoidalComplex& mc);

bool semigroup_contains(const MonoidalComplex& mc, std::size_t cone, const Vec& m);

MonoidalComplex coordinate_arrangement(std::size_t n, std::size_t p);
/// vertices are 1-based; NotSimplicial on repeated vertices
MonoidalComplex stanley_reisner(std::size_t n, const std::vector<std::vector<std::size_t>>& facets);
RawComplex coordinate_arrangement_raw(std::size_t n, std::size_t p);
RawComplex stanley_reisner_raw(std::size_t n, const std::vector<std::vector<std::size_t>>& facets);
/// cone((1,0),(1,2)) in Z^2 with saturated lattices
RawComplex cusp_cone_raw();
MonoidalComplex cusp_cone();

}  // namespace tfr
