#pragma once

#include "tfr/mcomplex.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tfr {

/// (codim-one cone τ, facet F) -> d_{τ≺F}
using IncidenceTable = std::map<std::pair<std::size_t, std::size_t>, Int>;

IncidenceTable incidence_table(const MonoidalComplex& mc);

struct Verdict {
    bool value = true;
    bool exact = true;        // false: verified only inside the box
    long box = 0;             // box radius used when not exact
    std::string note;
    std::vector<std::string> witness;
    std::optional<Vec> point;  // lattice witness, when one exists
};

/// S' = ∩_i (S - S∩τ_i) for a single cone semigroup S.
class S2Closure {
public:
    S2Closure(std::size_t ambient, const Mat& generators);
    bool contains(const Vec& m) const;
    /// all members in the box lo <= m <= hi
    std::vector<Vec> enumerate(const Vec& lo, const Vec& hi) const;
    const Semigroup& semigroup() const { return base_; }
    const RationalCone& cone() const { return base_.cone(); }
    /// codimension one faces τ_i, in the order of the pieces
    const std::vector<RationalCone>& faces() const { return faces_; }
    /// S - S∩τ_i as a semigroup
    const std::vector<Semigroup>& pieces() const { return pieces_; }

private:
    Semigroup base_;
    std::vector<RationalCone> faces_;
    std::vector<Semigroup> pieces_;
};

/// NotIrreducible unless the complex has a single facet in generator mode
S2Closure s2_closure_irreducible(const MonoidalComplex& mc);

long default_box(const MonoidalComplex& mc);

Verdict is_s2(const MonoidalComplex& mc, std::optional<long> box = std::nullopt);
Verdict is_seminormal(const MonoidalComplex& mc, std::optional<long> box = std::nullopt);
Verdict is_weakly_normal(const MonoidalComplex& mc, std::optional<long> box = std::nullopt);

/// Λ_τ = Λ_σ ∩ span τ for every face τ of σ
bool cone_is_normal(const MonoidalComplex& mc, std::size_t sigma, std::vector<std::string>* why = nullptr);
bool has_normal_components(const MonoidalComplex& mc);

/// Δ': closed under faces, sorted by cone index. Lattice-family mode only.
std::vector<std::size_t> conductor_fan(const MonoidalComplex& mc);
bool is_conductor_cone(const MonoidalComplex& mc, const std::vector<std::size_t>& conductor, std::size_t i);

struct CoreResult {
    std::size_t cone = 0;
    bool normal = false;
    std::vector<std::string> certificate;
};

/// σ(Δ); PreconditionFailed unless seminormal and S2
CoreResult core(const MonoidalComplex& mc);

struct NormalityReport {
    Verdict seminormal;
    Verdict weakly_normal;
    Verdict s2;
    bool has_normal_components = false;
    bool exact = true;
    long box = 0;
};

NormalityReport normality_report(const MonoidalComplex& mc, std::optional<long> box = std::nullopt);

}  // namespace tfr
