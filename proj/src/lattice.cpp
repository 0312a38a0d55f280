#include "latsamp/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace latsamp {

ShiftedLattice::ShiftedLattice(RatMat a, ShiftVector b)
    : matrix(std::move(a)), beta(std::move(b)) {
    if (beta.size() != matrix.dim())
        throw std::invalid_argument("ShiftedLattice: shift dimension mismatch");
    Rat det = matrix.determinant();
    if (det == 0) throw std::domain_error("ShiftedLattice: singular matrix");
    absdet = abs(det);
    dual = matrix.transpose().inverse();
}

LatticeSystem::LatticeSystem(std::vector<ShiftedLattice> ls) : lattices(std::move(ls)) {
    if (lattices.empty()) throw std::invalid_argument("LatticeSystem: needs n >= 1 lattices");
    for (const auto& l : lattices)
        if (l.dim() != lattices[0].dim())
            throw std::invalid_argument("LatticeSystem: mixed dimensions");
}

bool LatticeSystem::unshifted() const {
    for (const auto& l : lattices)
        if (!shift_is_zero(l.beta)) return false;
    return true;
}

bool LatticeSystem::exact_shifts() const {
    for (const auto& l : lattices)
        if (!shift_is_exact(l.beta)) return false;
    return true;
}

bool LatticeSystem::shared_matrix() const {
    for (const auto& l : lattices)
        if (!(l.matrix == lattices[0].matrix)) return false;
    return true;
}

Rat LatticeSystem::frame_constant() const {
    Rat k(0);
    for (const auto& l : lattices) k += 1 / l.absdet;
    return k;
}

std::vector<std::size_t> membership_set(const LatticeSystem& sys, const RatVec& alpha) {
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < sys.size(); ++j) {
        RatVec w = sys.lattices[j].matrix.transpose().apply(alpha);
        bool integral = true;
        for (const auto& c : w)
            if (!is_integer(c)) {
                integral = false;
                break;
            }
        if (integral) members.push_back(j);
    }
    return members;
}

namespace {

std::vector<RatVec> lambda_points_in_box(const LatticeSystem& sys, const RatVec& lo,
                                         const RatVec& hi) {
    std::vector<RatVec> pts;
    for (const auto& l : sys.lattices) {
        for (const auto& z : integer_points_in_preimage(l.dual, lo, hi))
            pts.push_back(l.dual.apply(z));
    }
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

std::vector<DualPointInfo> enumerate_lambda(const LatticeSystem& sys, const Band& window) {
    if (window.empty()) return {};
    auto [lo, hi] = window.bounding_box();
    std::vector<DualPointInfo> out;
    for (auto& alpha : lambda_points_in_box(sys, lo, hi))
        out.push_back({alpha, membership_set(sys, alpha)});
    return out;
}

ShiftGroups group_by_key(const std::vector<std::size_t>& members,
                         const std::vector<ShiftVector>& keys) {
    ShiftGroups g;
    std::map<ShiftVector, std::vector<std::size_t>,
             bool (*)(const ShiftVector&, const ShiftVector&)>
        by_key(&shift_lex_less);
    for (std::size_t j : members) {
        const ShiftVector& q = keys.at(j);
        if (!shift_is_exact(q)) g.exact = false;
        by_key[q].push_back(j);
    }
    for (auto& [q, js] : by_key) g.groups.emplace_back(q, js);
    return g;
}

ShiftGroups group_shifts(const DualPointInfo& info, const std::vector<ShiftVector>& betas,
                         const std::vector<ShiftVector>& gammas) {
    if (betas.size() != gammas.size())
        throw std::invalid_argument("group_shifts: shift list length mismatch");
    std::vector<ShiftVector> keys;
    keys.reserve(betas.size());
    for (std::size_t j = 0; j < betas.size(); ++j)
        keys.push_back(shift_sub(gammas[j], betas[j]));
    return group_by_key(info.members, keys);
}

namespace {

bool is_generalized_permutation(const RatMat& m) {
    const std::size_t d = m.dim();
    std::vector<int> col_used(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        int nz = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (m.at(i, j) != 0) {
                ++nz;
                ++col_used[j];
            }
        }
        if (nz != 1) return false;
    }
    for (std::size_t j = 0; j < d; ++j)
        if (col_used[j] != 1) return false;
    return true;
}

// Axis-aligned image [lo, hi) of a box under a generalized permutation matrix.
Box box_image(const RatMat& m, const Box& b) {
    const std::size_t d = b.dim();
    RatVec lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        Rat a(0), bnd_l(0), bnd_u(0);
        for (std::size_t j = 0; j < d; ++j) {
            if (m.at(i, j) == 0) continue;
            a = m.at(i, j);
            bnd_l = a * b.lower[j];
            bnd_u = a * b.upper[j];
        }
        lo[i] = std::min(bnd_l, bnd_u);
        hi[i] = std::max(bnd_l, bnd_u);
    }
    return Box(std::move(lo), std::move(hi));
}

// Split [lo, hi) at integer cuts along every axis and translate each piece
// into the unit cube; boxes stay boxes.
std::vector<Box> fold_box(const Box& b) {
    std::vector<Box> pieces{b};
    const std::size_t d = b.dim();
    for (std::size_t axis = 0; axis < d; ++axis) {
        std::vector<Box> next;
        for (const auto& p : pieces) {
            Int k0 = floor_int(p.lower[axis]);
            Int k1 = ceil_int(p.upper[axis]);
            for (Int k = k0; k < k1; ++k) {
                Rat cl = std::max(p.lower[axis], Rat(k));
                Rat cu = std::min(p.upper[axis], Rat(k + 1));
                if (!(cl < cu)) continue;
                Box piece = p;
                piece.lower[axis] = cl - Rat(k);
                piece.upper[axis] = cu - Rat(k);
                next.push_back(std::move(piece));
            }
        }
        pieces = std::move(next);
    }
    return pieces;
}

void for_each_grid_cell(const std::vector<std::vector<Rat>>& cuts,
                        const std::function<void(const Box&)>& fn) {
    const std::size_t d = cuts.size();
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        RatVec lo(d), hi(d);
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = cuts[a][idx[a]];
            hi[a] = cuts[a][idx[a] + 1];
        }
        fn(Box(std::move(lo), std::move(hi)));
        std::size_t a = 0;
        while (a < d) {
            if (++idx[a] + 1 < cuts[a].size()) break;
            idx[a] = 0;
            ++a;
        }
        if (a == d) break;
    }
}

}  // namespace

std::vector<FoldedPiece> fold_pieces(const Band& E, const RatMat& a_star) {
    std::vector<FoldedPiece> out;
    const std::size_t d = E.dim();
    for (const auto& par : linear_image(E, a_star, zero_vec(d))) {
        struct Piece {
            HPolytope h;
            RatVec cell;  // integer corner of the unit cell holding the piece
        };
        auto [lo, hi] = par.bounding_box();
        std::vector<Piece> pieces{{par.halfspaces, zero_vec(d)}};
        for (std::size_t axis = 0; axis < d; ++axis) {
            std::vector<Piece> next;
            for (auto& p : pieces) {
                for (Int k = floor_int(lo[axis]); k < ceil_int(hi[axis]); ++k) {
                    Piece cut = p;
                    RatVec en = zero_vec(d), ep = zero_vec(d);
                    en[axis] = -1;
                    ep[axis] = 1;
                    cut.h.add_constraint(en, Rat(-k));      // x_axis >= k
                    cut.h.add_constraint(ep, Rat(k + 1));   // x_axis <= k+1
                    cut.cell[axis] = Rat(k);
                    // Drop empty slabs now, before the cell count multiplies.
                    if (interior_nonempty(cut.h)) next.push_back(std::move(cut));
                }
            }
            pieces = std::move(next);
        }
        for (auto& p : pieces) {
            HPolytope folded = p.h.translated(neg(p.cell));
            // Bounding box: parent bbox clipped to the unit cell, translated back.
            RatVec blo(d), bhi(d);
            for (std::size_t i = 0; i < d; ++i) {
                const Rat chi = p.cell[i] + 1;
                blo[i] = std::max(lo[i], p.cell[i]) - p.cell[i];
                bhi[i] = std::min(hi[i], chi) - p.cell[i];
            }
            out.push_back({std::move(folded), std::move(blo), std::move(bhi)});
        }
    }
    return out;
}

namespace {

bool bbox_clip(RatVec& lo, RatVec& hi, const FoldedPiece& p) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (p.bbox_lo[i] > lo[i]) lo[i] = p.bbox_lo[i];
        if (p.bbox_hi[i] < hi[i]) hi[i] = p.bbox_hi[i];
        if (lo[i] >= hi[i]) return false;
    }
    return true;
}

void depth_dfs(const std::vector<FoldedPiece>& pieces,
               const std::vector<std::size_t>& candidates, const HPolytope& current,
               const RatVec& lo, const RatVec& hi, long depth, long& best) {
    best = std::max(best, depth);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (depth + long(candidates.size() - c) <= best) break;
        const FoldedPiece& p = pieces[candidates[c]];
        RatVec nlo = lo, nhi = hi;
        if (!bbox_clip(nlo, nhi, p)) continue;
        HPolytope next = current;
        next.append(p.poly);
        if (!interior_nonempty(next)) continue;
        // Only deeper candidates whose bbox still meets the running bbox.
        std::vector<std::size_t> rest;
        for (std::size_t c2 = c + 1; c2 < candidates.size(); ++c2) {
            RatVec tl = nlo, th = nhi;
            if (bbox_clip(tl, th, pieces[candidates[c2]])) rest.push_back(candidates[c2]);
        }
        depth_dfs(pieces, rest, next, nlo, nhi, depth + 1, best);
    }
}

}  // namespace

long max_overlap_depth(const std::vector<FoldedPiece>& pieces) {
    long best = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (long(pieces.size() - i) <= best) break;
        std::vector<std::size_t> candidates;
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            RatVec tl = pieces[i].bbox_lo, th = pieces[i].bbox_hi;
            if (bbox_clip(tl, th, pieces[j])) candidates.push_back(j);
        }
        depth_dfs(pieces, candidates, pieces[i].poly, pieces[i].bbox_lo, pieces[i].bbox_hi,
                  1, best);
    }
    return best;
}

CoveringFunction covering_function(const Band& E, const ShiftedLattice& L) {
    CoveringFunction cf;
    const std::size_t d = E.dim();
    RatMat a_star = L.matrix.transpose();
    cf.integral = L.absdet * E.measure();

    if (E.empty() || is_generalized_permutation(a_star)) {
        cf.has_cells = true;
        std::vector<Box> folded;
        for (const auto& b : E.boxes())
            for (auto& p : fold_box(box_image(a_star, b))) folded.push_back(std::move(p));

        std::vector<std::vector<Rat>> cuts(d);
        for (std::size_t a = 0; a < d; ++a) cuts[a] = {Rat(0), Rat(1)};
        for (const auto& f : folded)
            for (std::size_t a = 0; a < d; ++a) {
                cuts[a].push_back(f.lower[a]);
                cuts[a].push_back(f.upper[a]);
            }
        for (auto& c : cuts) {
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }
        for_each_grid_cell(cuts, [&](const Box& cell) {
            long count = 0;
            for (const auto& f : folded) {
                bool inside = true;
                for (std::size_t a = 0; a < d; ++a)
                    if (f.lower[a] > cell.lower[a] || f.upper[a] < cell.upper[a]) {
                        inside = false;
                        break;
                    }
                if (inside) ++count;
            }
            cf.cells.push_back({cell, count});
            cf.ess_sup = std::max(cf.ess_sup, count);
        });
        return cf;
    }

    cf.pieces = fold_pieces(E, a_star);
    cf.ess_sup = max_overlap_depth(cf.pieces);
    return cf;
}

std::vector<DualPointInfo> overlap_shifts_band(const Band& E, const Band& F,
                                               const LatticeSystem& sys, bool include_zero) {
    if (E.dim() != F.dim() || E.dim() != sys.dim())
        throw std::invalid_argument("overlap_shifts_band: dimension mismatch");
    if (E.empty() || F.empty()) return {};
    auto [el, eu] = E.bounding_box();
    auto [fl, fu] = F.bounding_box();
    const std::size_t d = E.dim();
    RatVec lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = el[i] - fu[i];
        hi[i] = eu[i] - fl[i];
    }
    std::vector<DualPointInfo> out;
    for (auto& alpha : lambda_points_in_box(sys, lo, hi)) {
        bool zero = true;
        for (const auto& c : alpha)
            if (c != 0) {
                zero = false;
                break;
            }
        if (zero && !include_zero) continue;
        if (measure(intersect(E, translate(F, alpha))) > 0)
            out.push_back({alpha, membership_set(sys, alpha)});
    }
    return out;
}

}  // namespace latsamp
