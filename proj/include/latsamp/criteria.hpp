#pragma once

// Decision procedures for tightness and orthogonality of sampling transforms
// on unions of shifted lattices, with re-checkable witnesses.

#include "latsamp/cyclotomic.hpp"
#include "latsamp/geometry.hpp"
#include "latsamp/lattice.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace latsamp {

enum class VerdictMode { Exact, Numeric };

struct CriteriaConfig {
    double numeric_tol = 1e-9;  // zero tolerance for inexact exponential sums
};

// Raised for system shapes outside the supported decision procedures
// (per-index distinct matrices combined with nontrivial shifts).
class UnsupportedSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TightWitness {
    std::optional<std::size_t> lattice_index;   // j of a failing single lattice
    std::optional<RatVec> integer_shift;        // z with m(E cap (E + A_j' z)) > 0
    std::optional<RatVec> alpha;                // failing dual point
    Band overlap{0};                            // positive-measure overlap region
    std::optional<ExponentialSum> failing_sum;  // nonvanishing sum at alpha
};

struct TightnessVerdict {
    bool tight = false;
    VerdictMode mode = VerdictMode::Exact;
    std::optional<Rat> constant;                          // K, present iff tight
    std::vector<std::pair<std::size_t, Rat>> per_lattice; // (j, K_j = 1/|det A_j|)
    std::optional<TightWitness> witness;
};

struct OrthoWitness {
    std::optional<std::size_t> lattice_index;   // failing j (unshifted route)
    std::optional<RatVec> integer_shift;        // k or m
    std::optional<RatVec> alpha;                // dual point (shared-matrix route)
    std::optional<ShiftVector> group_key;       // q of the failing group
    std::optional<ExponentialSum> failing_sum;
    std::optional<Band> overlap;                // overlap region in frequency space
};

struct OrthogonalityVerdict {
    bool orthogonal = false;
    VerdictMode mode = VerdictMode::Exact;
    std::vector<std::pair<std::size_t, bool>> per_lattice;  // per-j verdicts when defined
    std::optional<OrthoWitness> witness;
};

// Per-lattice essential supremum of the covering function; always finite for
// a bounded band.
std::vector<Rat> check_bounded(const Band& E, const LatticeSystem& sys);

// Unshifted systems only (throws std::invalid_argument otherwise): tight iff
// no lattice has a positive-measure self-overlap E cap (E + A_j' z), z != 0.
TightnessVerdict check_tight_unshifted(const Band& E, const LatticeSystem& sys);

// Same verdict through the covering function: tight iff every per-lattice
// essential supremum is at most 1. Independent route used for cross-checks.
bool tight_by_covering(const Band& E, const LatticeSystem& sys);

// Shifted systems: every alpha in Lambda \ {0} with positive self-overlap
// must have a vanishing shift sum over P_alpha.
TightnessVerdict check_tight_shifted(const Band& E, const LatticeSystem& sys,
                                     const CriteriaConfig& cfg = {});

// Unshifted pair of systems of equal length: orthogonal iff for every j the
// periodizations of A_j^* E and B_j^* F never overlap modulo Z^d.
OrthogonalityVerdict check_orthogonal_unshifted(const Band& E, const Band& F,
                                                const LatticeSystem& sysA,
                                                const LatticeSystem& sysB);

// Shared matrices per index (B_j = A_j): every alpha in Lambda (zero
// included) with positive E cap (F + alpha) needs all group sums over
// I_{q,alpha} to vanish.
OrthogonalityVerdict check_orthogonal_shifted_shared(const Band& E, const Band& F,
                                                     const LatticeSystem& sysA,
                                                     const LatticeSystem& sysB,
                                                     const CriteriaConfig& cfg = {});

// Single matrix per system (A_j = A, B_j = B): every integer m with interior
// overlap of A^* E and B^* F + m needs all group sums over J_q to vanish.
OrthogonalityVerdict check_orthogonal_shifted_pair(const Band& E, const Band& F,
                                                   const LatticeSystem& sysA,
                                                   const LatticeSystem& sysB,
                                                   const CriteriaConfig& cfg = {});

// Pointwise-multiplication symbol of Theta_B^* Theta_A for systems with
// matching matrices per index: on E cap F the finite exponential polynomial
// sum_j |det A_j|^{-1} e^{2 pi i (beta_j - gamma_j) . xi}, zero elsewhere.
struct MultiplierSymbol {
    Band support;  // E cap F
    std::vector<std::pair<Rat, ShiftVector>> terms;  // (coefficient, beta_j - gamma_j)

    std::complex<double> evaluate(const RatVec& xi) const;
    // The exact constant value when every phase difference vanishes.
    std::optional<Rat> constant_value() const;
};

MultiplierSymbol multiplier_symbol(const Band& E, const Band& F, const LatticeSystem& sysA,
                                   const LatticeSystem& sysB);

}  // namespace latsamp
