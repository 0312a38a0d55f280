#include "latsamp/criteria.hpp"

#include <algorithm>
#include <numbers>

namespace latsamp {
namespace {

struct SumVerdict {
    bool zero;
    VerdictMode mode;
};

SumVerdict sum_vanishes(const ExponentialSum& s, const CriteriaConfig& cfg) {
    if (s.all_exact()) return {is_zero_exact(s), VerdictMode::Exact};
    return {is_zero_numeric(s, cfg.numeric_tol).zero, VerdictMode::Numeric};
}

std::vector<std::pair<std::size_t, Rat>> per_lattice_constants(const LatticeSystem& sys) {
    std::vector<std::pair<std::size_t, Rat>> out;
    for (std::size_t j = 0; j < sys.size(); ++j)
        out.emplace_back(j, 1 / sys.lattices[j].absdet);
    return out;
}

void require_equal_length(const LatticeSystem& a, const LatticeSystem& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("paired systems must have equal length");
    if (a.dim() != b.dim())
        throw std::invalid_argument("paired systems must share dimension");
}

std::vector<ShiftVector> shifts_of(const LatticeSystem& sys) {
    std::vector<ShiftVector> out;
    out.reserve(sys.size());
    for (const auto& l : sys.lattices) out.push_back(l.beta);
    return out;
}

// Groups reordered by smallest member index, so witnesses name the group of
// the earliest lattice rather than the lexicographically smallest key.
std::vector<std::pair<ShiftVector, std::vector<std::size_t>>> groups_by_first_member(
    const ShiftGroups& groups) {
    auto out = groups.groups;
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.second.front() < b.second.front(); });
    return out;
}

}  // namespace

std::vector<Rat> check_bounded(const Band& E, const LatticeSystem& sys) {
    std::vector<Rat> out;
    out.reserve(sys.size());
    for (const auto& l : sys.lattices)
        out.emplace_back(Rat(Int(covering_function(E, l).ess_sup)));
    return out;
}

TightnessVerdict check_tight_unshifted(const Band& E, const LatticeSystem& sys) {
    if (E.dim() != sys.dim()) throw std::invalid_argument("band/system dimension mismatch");
    if (!sys.unshifted())
        throw std::invalid_argument(
            "system has nonzero shifts; use check_tight_shifted");

    TightnessVerdict v;
    v.per_lattice = per_lattice_constants(sys);
    if (E.empty()) {
        v.tight = true;
        v.constant = sys.frame_constant();
        return v;
    }
    auto [lo, hi] = E.bounding_box();
    const std::size_t d = E.dim();
    RatVec dlo(d), dhi(d);
    for (std::size_t i = 0; i < d; ++i) {
        dlo[i] = lo[i] - hi[i];
        dhi[i] = hi[i] - lo[i];
    }
    for (std::size_t j = 0; j < sys.size(); ++j) {
        const auto& l = sys.lattices[j];
        for (const auto& z : integer_points_in_preimage(l.dual, dlo, dhi)) {
            bool zero = std::all_of(z.begin(), z.end(), [](const Rat& c) { return c == 0; });
            if (zero) continue;
            Band overlap = intersect(E, translate(E, l.dual.apply(z)));
            if (measure(overlap) > 0) {
                TightWitness w;
                w.lattice_index = j;
                w.integer_shift = z;
                w.alpha = l.dual.apply(z);
                w.overlap = overlap;
                v.tight = false;
                v.witness = std::move(w);
                return v;
            }
        }
    }
    v.tight = true;
    v.constant = sys.frame_constant();
    return v;
}

bool tight_by_covering(const Band& E, const LatticeSystem& sys) {
    for (const auto& l : sys.lattices)
        if (covering_function(E, l).ess_sup > 1) return false;
    return true;
}

TightnessVerdict check_tight_shifted(const Band& E, const LatticeSystem& sys,
                                     const CriteriaConfig& cfg) {
    if (E.dim() != sys.dim()) throw std::invalid_argument("band/system dimension mismatch");
    TightnessVerdict v;
    v.per_lattice = per_lattice_constants(sys);
    v.mode = sys.exact_shifts() ? VerdictMode::Exact : VerdictMode::Numeric;

    for (const auto& info : overlap_shifts_band(E, E, sys, /*include_zero=*/false)) {
        ExponentialSum s;
        for (std::size_t j : info.members)
            s.add(1 / sys.lattices[j].absdet, shift_dot(sys.lattices[j].beta, info.alpha));
        SumVerdict sv = sum_vanishes(s, cfg);
        if (sv.mode == VerdictMode::Numeric) v.mode = VerdictMode::Numeric;
        if (!sv.zero) {
            TightWitness w;
            w.alpha = info.alpha;
            w.overlap = intersect(E, translate(E, info.alpha));
            w.failing_sum = std::move(s);
            if (info.members.size() == 1) w.lattice_index = info.members[0];
            v.tight = false;
            v.witness = std::move(w);
            return v;
        }
    }
    v.tight = true;
    v.constant = sys.frame_constant();
    return v;
}

OrthogonalityVerdict check_orthogonal_unshifted(const Band& E, const Band& F,
                                                const LatticeSystem& sysA,
                                                const LatticeSystem& sysB) {
    require_equal_length(sysA, sysB);
    if (!sysA.unshifted() || !sysB.unshifted())
        throw std::invalid_argument(
            "systems have nonzero shifts; use a shifted orthogonality checker");

    OrthogonalityVerdict v;
    v.orthogonal = true;
    const std::size_t d = sysA.dim();
    for (std::size_t j = 0; j < sysA.size(); ++j) {
        auto imgE = linear_image(E, sysA.lattices[j].matrix.transpose(), zero_vec(d));
        auto imgF = linear_image(F, sysB.lattices[j].matrix.transpose(), zero_vec(d));
        auto ks = overlap_translates(imgE, imgF);
        v.per_lattice.emplace_back(j, ks.empty());
        if (!ks.empty() && v.orthogonal) {
            v.orthogonal = false;
            OrthoWitness w;
            w.lattice_index = j;
            w.integer_shift = ks.front();
            v.witness = std::move(w);
        }
    }
    return v;
}

OrthogonalityVerdict check_orthogonal_shifted_shared(const Band& E, const Band& F,
                                                     const LatticeSystem& sysA,
                                                     const LatticeSystem& sysB,
                                                     const CriteriaConfig& cfg) {
    require_equal_length(sysA, sysB);
    for (std::size_t j = 0; j < sysA.size(); ++j)
        if (!(sysA.lattices[j].matrix == sysB.lattices[j].matrix))
            throw UnsupportedSystemError(
                "matrices differ per index; use check_orthogonal_shifted_pair for "
                "single-matrix systems (no criterion in paper otherwise)");

    OrthogonalityVerdict v;
    v.mode = (sysA.exact_shifts() && sysB.exact_shifts()) ? VerdictMode::Exact
                                                          : VerdictMode::Numeric;
    auto betas = shifts_of(sysA);
    auto gammas = shifts_of(sysB);

    for (const auto& info : overlap_shifts_band(E, F, sysA, /*include_zero=*/true)) {
        ShiftGroups groups = group_shifts(info, betas, gammas);
        for (const auto& [q, js] : groups_by_first_member(groups)) {
            ExponentialSum s;
            for (std::size_t j : js)
                s.add(1 / sysA.lattices[j].absdet, shift_dot(gammas[j], info.alpha));
            SumVerdict sv = sum_vanishes(s, cfg);
            if (sv.mode == VerdictMode::Numeric) v.mode = VerdictMode::Numeric;
            if (!sv.zero) {
                OrthoWitness w;
                w.alpha = info.alpha;
                w.group_key = q;
                w.failing_sum = std::move(s);
                w.overlap = intersect(E, translate(F, info.alpha));
                v.orthogonal = false;
                v.witness = std::move(w);
                return v;
            }
        }
    }
    v.orthogonal = true;
    return v;
}

OrthogonalityVerdict check_orthogonal_shifted_pair(const Band& E, const Band& F,
                                                   const LatticeSystem& sysA,
                                                   const LatticeSystem& sysB,
                                                   const CriteriaConfig& cfg) {
    require_equal_length(sysA, sysB);
    if (!sysA.shared_matrix() || !sysB.shared_matrix())
        throw UnsupportedSystemError(
            "check_orthogonal_shifted_pair needs a single matrix per system "
            "(no criterion in paper otherwise)");

    OrthogonalityVerdict v;
    v.mode = (sysA.exact_shifts() && sysB.exact_shifts()) ? VerdictMode::Exact
                                                          : VerdictMode::Numeric;
    const std::size_t d = sysA.dim();
    const RatMat& A = sysA.lattices[0].matrix;
    const RatMat& B = sysB.lattices[0].matrix;
    RatMat a_inv = A.inverse(), b_inv = B.inverse();
    RatMat b_dual = B.transpose().inverse();

    // J_q keys: B^{-1} gamma_j - A^{-1} beta_j.
    std::vector<ShiftVector> keys;
    std::vector<std::size_t> all;
    for (std::size_t j = 0; j < sysA.size(); ++j) {
        keys.push_back(shift_sub(shift_matvec(b_inv, sysB.lattices[j].beta),
                                 shift_matvec(a_inv, sysA.lattices[j].beta)));
        all.push_back(j);
    }
    ShiftGroups groups = group_by_key(all, keys);
    if (!groups.exact) v.mode = VerdictMode::Numeric;

    auto imgE = linear_image(E, A.transpose(), zero_vec(d));
    auto imgF = linear_image(F, B.transpose(), zero_vec(d));
    auto ordered_groups = groups_by_first_member(groups);
    for (const auto& m : overlap_translates(imgE, imgF)) {
        RatVec bpm = b_dual.apply(m);  // B' m
        for (const auto& [q, js] : ordered_groups) {
            ExponentialSum s;
            for (std::size_t j : js) s.add(Rat(1), shift_dot(sysB.lattices[j].beta, bpm));
            SumVerdict sv = sum_vanishes(s, cfg);
            if (sv.mode == VerdictMode::Numeric) v.mode = VerdictMode::Numeric;
            if (!sv.zero) {
                OrthoWitness w;
                w.integer_shift = m;
                w.group_key = q;
                w.failing_sum = std::move(s);
                v.orthogonal = false;
                v.witness = std::move(w);
                return v;
            }
        }
    }
    v.orthogonal = true;
    return v;
}

std::complex<double> MultiplierSymbol::evaluate(const RatVec& xi) const {
    if (!support.contains(xi)) return {0.0, 0.0};
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [coeff, delta] : terms) {
        double theta = 2.0 * std::numbers::pi * shift_dot(delta, xi).approx();
        acc += to_double(coeff) * std::complex<double>{std::cos(theta), std::sin(theta)};
    }
    return acc;
}

std::optional<Rat> MultiplierSymbol::constant_value() const {
    Rat k(0);
    for (const auto& [coeff, delta] : terms) {
        if (!shift_is_zero(delta)) return std::nullopt;
        k += coeff;
    }
    return k;
}

MultiplierSymbol multiplier_symbol(const Band& E, const Band& F, const LatticeSystem& sysA,
                                   const LatticeSystem& sysB) {
    require_equal_length(sysA, sysB);
    for (std::size_t j = 0; j < sysA.size(); ++j)
        if (!(sysA.lattices[j].matrix == sysB.lattices[j].matrix))
            throw UnsupportedSystemError("multiplier symbol needs matching matrices per index");
    MultiplierSymbol s{intersect(E, F), {}};
    for (std::size_t j = 0; j < sysA.size(); ++j)
        s.terms.emplace_back(1 / sysA.lattices[j].absdet,
                             shift_sub(sysA.lattices[j].beta, sysB.lattices[j].beta));
    return s;
}

}  // namespace latsamp
