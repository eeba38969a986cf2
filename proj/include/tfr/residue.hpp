#pragma once

#include "tfr/logpair.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfr {

struct Different {
    std::size_t center = 0;
    /// codimension one face Q of the center -> mult_Q
    std::map<std::size_t, Rat> coefficients;
    /// Q -> q with π(e_j) = q e_Q, from the first facet through the center
    std::map<std::size_t, Int> q;
};

/// NotAnLcCenter unless center is a codimension one lc center; InconsistentDifferent on disagreement
Different different(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, std::size_t center);

struct ResidueDatum {
    long r = 2;
    unsigned long characteristic = 0;
    std::map<std::size_t, Unit> constants_facets;
    std::map<std::size_t, Unit> constants_primes;
    QVec psi;
    /// (τ, F) -> ε_{τ≺F}
    std::map<std::pair<std::size_t, std::size_t>, int> signs;
};

/// NotOrientable if a cycle check fails; r must be even and positive
ResidueDatum residue_constants(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r,
                               TreeVariant variant = TreeVariant::Bfs);

/// c_F = c_i (ε d)^r for every incidence
bool verify_residue_datum(const MonoidalComplex& mc, const ResidueDatum& datum, std::string* why = nullptr);

struct GlueCheck {
    bool ok = true;
    /// (Q, F, E1, E2) of the first failure
    std::optional<std::array<std::size_t, 4>> witness;
    std::optional<Unit> lhs, rhs;
    std::size_t checked = 0;
};

GlueCheck lcs_glue_check(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r);

struct LcsDifferent {
    LcsLocus locus;
    /// boundary on Y, keyed by cone indices of *locus.y
    Boundary boundary;
    /// per component of Y (cone index in mc)
    std::map<std::size_t, Different> differents;
};

/// GlueCheckFailed unless lcs_glue_check passes
LcsDifferent lcs_different(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r);

struct HigherResidue {
    Unit constant;
    /// codimension one face of Z (cone index in mc) -> coefficient of B_Z
    std::map<std::size_t, Rat> boundary;
    std::size_t chains = 0;
};

/// NotNormalComponents; NotAnLcCenter
HigherResidue higher_residue(const MonoidalComplex& mc, const Boundary& b, const QVec& psi, long r, std::size_t z);

struct ChainStep {
    MonoidalComplex x;
    Boundary boundary;
    QVec psi;
    ResidueDatum residue;
};

/// X = X_0 ⊃ X_1 ⊃ ... until the LCS locus is empty; the input is the first entry
std::vector<ChainStep> lcs_chain(const MonoidalComplex& mc, const Boundary& b, long r = 2);

}  // namespace tfr
