#pragma once

#include "tfr/normality.hpp"
#include "tfr/signs.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tfr {

/// codimension one cone index -> coefficient; absent means 0
using Boundary = std::map<std::size_t, Rat>;

/// codimension one, in a unique facet, incidence 1
bool is_smooth_prime(const MonoidalComplex& mc, std::size_t tau);
/// InvalidBoundary unless every entry sits on a smooth prime
void validate_boundary(const MonoidalComplex& mc, const Boundary& b);
/// coefficient of the prime in C + B on the normalization
Rat prime_coefficient(const MonoidalComplex& mc, const Boundary& b, std::size_t tau);

struct FacetEquation {
    std::size_t tau = 0, facet = 0;
    QVec functional;  // e_{τ,F} on span F
    Rat rhs;          // 1 - coefficient
};

std::vector<FacetEquation> facet_equations(const MonoidalComplex& mc, const Boundary& b);

struct LogDiscrepancy {
    bool feasible = false;
    QVec psi;
    std::size_t core = 0;
    Sublattice residue_lattice;
    /// directions along which ψ is not determined
    QMat ambiguity;
    /// equations (τ, F) of an inconsistent subsystem when infeasible
    std::vector<std::pair<std::size_t, std::size_t>> inconsistent;
};

LogDiscrepancy try_solve_psi(const MonoidalComplex& mc, const Boundary& b);
/// Infeasible when the system has no solution
LogDiscrepancy solve_psi(const MonoidalComplex& mc, const Boundary& b);

struct CycleValue {
    std::vector<std::size_t> cycle;  // closed walk of facets, first == last
    Unit value;                      // product of signed incidence ratios
};

/// one entry per chord of the BFS spanning tree of the facet graph
std::vector<CycleValue> cycle_values(const MonoidalComplex& mc, TreeVariant variant = TreeVariant::Bfs);

struct Orientability {
    bool value = true;
    long n = 0;
    bool orientation_caveat = false;  // odd n in characteristic 0
    std::optional<CycleValue> witness;
};

Orientability is_n_orientable(const MonoidalComplex& mc, long n);

struct QOrientability {
    bool value = true;
    unsigned long exponent = 1;  // lcm of cycle orders, 0 if some order is infinite
    std::optional<CycleValue> witness;
};

QOrientability q_orientability(const MonoidalComplex& mc);

struct ClassificationReport {
    bool weakly_normal_log_pair = false;
    std::optional<LogDiscrepancy> psi;
    QOrientability orientability;
    bool wlc = false;
    bool slc = false;
    std::vector<long> invertibility_orders;
    std::vector<std::size_t> non_wlc_locus;
    /// verdict name -> witness strings for false verdicts
    std::map<std::string, std::vector<std::string>> witnesses;
    NormalityReport normality;
    /// the lattice-family complex the classification ran on
    std::optional<MonoidalComplex> complex;
};

/// PreconditionFailed unless seminormal, S2 and weakly normal
ClassificationReport classify(const MonoidalComplex& mc, const Boundary& b, long nmax = 12,
                              std::optional<long> box = std::nullopt);

std::vector<long> invertibility_orders(const MonoidalComplex& mc, const Boundary& b, long nmax);

/// <e, ψ> for a functional e
Rat pairing(const Vec& e, const QVec& psi);

std::vector<std::size_t> lc_centers(const MonoidalComplex& mc, const Boundary& b, const QVec& psi);

struct MinimalCenter {
    std::size_t cone = 0;
    bool normal = false;
    std::vector<std::string> certificate;
};

/// NotWlc unless wlc
MinimalCenter minimal_lc_center(const MonoidalComplex& mc, const Boundary& b, const QVec& psi);

struct LcsLocus {
    std::vector<std::size_t> maximal;  // cone indices in the input complex
    std::optional<MonoidalComplex> y;  // empty for klt pairs
    bool pure_codim1 = true;
    Verdict s2, weakly_normal;
};

/// NotWlc unless wlc
LcsLocus lcs_locus(const MonoidalComplex& mc, const Boundary& b, const QVec& psi);

/// NotWlc unless (mc, b) is wlc with the given ψ
void require_wlc(const MonoidalComplex& mc, const Boundary& b, const QVec& psi);

}  // namespace tfr
