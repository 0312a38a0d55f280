#pragma once

// Shifted lattices A z + beta, the union of dual lattices, membership sets,
// shift groupings and covering (periodization) functions.

#include "latsamp/geometry.hpp"
#include "latsamp/linalg.hpp"
#include "latsamp/shift.hpp"

#include <utility>
#include <vector>

namespace latsamp {

struct ShiftedLattice {
    RatMat matrix;    // A, invertible
    ShiftVector beta; // shift
    RatMat dual;      // A' = A^{*-1}
    Rat absdet;       // |det A|

    ShiftedLattice(RatMat a, ShiftVector b);
    ShiftedLattice(RatMat a, RatVec b) : ShiftedLattice(std::move(a), shift_from_rat_vec(b)) {}

    std::size_t dim() const { return matrix.dim(); }
};

struct LatticeSystem {
    std::vector<ShiftedLattice> lattices;

    LatticeSystem() = default;
    explicit LatticeSystem(std::vector<ShiftedLattice> ls);

    std::size_t size() const { return lattices.size(); }
    std::size_t dim() const { return lattices.at(0).dim(); }
    bool unshifted() const;
    bool exact_shifts() const;
    bool shared_matrix() const;  // all matrices equal

    // Sum of |det A_j|^{-1}: the frame constant of a tight system.
    Rat frame_constant() const;
};

// A point alpha of Lambda with its membership set P_alpha (0-based indices j
// with A_j^* alpha integral).
struct DualPointInfo {
    RatVec alpha;
    std::vector<std::size_t> members;
};

// Every alpha of Lambda inside the closed bounding box of `window`,
// deduplicated exactly, sorted lexicographically, each with its full P_alpha.
std::vector<DualPointInfo> enumerate_lambda(const LatticeSystem& sys, const Band& window);

std::vector<std::size_t> membership_set(const LatticeSystem& sys, const RatVec& alpha);

// Partition of `members` by the per-index key q_j; keys sorted canonically.
// `exact` is false when an inexact shift participates in any key, in which
// case grouping is by bitwise double equality and verdicts must demote.
struct ShiftGroups {
    bool exact = true;
    std::vector<std::pair<ShiftVector, std::vector<std::size_t>>> groups;
};

ShiftGroups group_by_key(const std::vector<std::size_t>& members,
                         const std::vector<ShiftVector>& keys);

// Keys q_j = gamma_j - beta_j restricted to `members`.
ShiftGroups group_shifts(const DualPointInfo& info, const std::vector<ShiftVector>& betas,
                         const std::vector<ShiftVector>& gammas);

// Periodization of chi_{A^* E} folded into the unit cube.  When A^* maps
// boxes to boxes the exact cell arrangement is materialized; otherwise the
// folded pieces are kept as polytopes and the essential supremum comes from
// an exact overlap-depth search.
struct CoveringCell {
    Box cell;
    long count;
};

struct FoldedPiece {
    HPolytope poly;
    RatVec bbox_lo, bbox_hi;  // exact closed bounding box, used for pruning
};

struct CoveringFunction {
    long ess_sup = 0;
    Rat integral;                      // |det A| * measure(E), exact
    bool has_cells = false;
    std::vector<CoveringCell> cells;   // disjoint, cover the unit cube (box path)
    std::vector<FoldedPiece> pieces;   // folded pieces, one count each (general path)
};

CoveringFunction covering_function(const Band& E, const ShiftedLattice& L);

// Folded pieces of chi_{A^* E} in the unit cube, as polytopes (general path).
std::vector<FoldedPiece> fold_pieces(const Band& E, const RatMat& a_star);

// Maximum number of pieces sharing a common interior point.
long max_overlap_depth(const std::vector<FoldedPiece>& pieces);

// All alpha in Lambda with measure(E cap (F + alpha)) > 0, each with P_alpha.
// alpha = 0 is reported only when include_zero is set.
std::vector<DualPointInfo> overlap_shifts_band(const Band& E, const Band& F,
                                               const LatticeSystem& sys, bool include_zero);

}  // namespace latsamp
