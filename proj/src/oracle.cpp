#include "latsamp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latsamp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i t} with the phase reduced mod 1 first, so that integer arguments
// map to exactly 1 and sinc zeros cancel exactly.
std::complex<double> cis(double t) {
    double r = std::fmod(t, 1.0);
    return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

struct KahanComplex {
    double sr = 0, si = 0, cr = 0, ci = 0;
    void add(const std::complex<double>& x) {
        double yr = x.real() - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = x.imag() - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    std::complex<double> value() const { return {sr, si}; }
};

struct KahanReal {
    double s = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// Visits all z with ||z||_inf == r in lexicographic order.
template <typename Fn>
void for_each_shell_point(std::size_t d, long r, Fn&& fn) {
    std::vector<long> z(d, 0);
    auto rec = [&](auto&& self, std::size_t i, bool touched) -> void {
        if (i == d) {
            if (touched) fn(z);
            return;
        }
        if (i + 1 == d && !touched) {
            z[i] = -r;
            fn(z);
            if (r != 0) {
                z[i] = r;
                fn(z);
            }
            return;
        }
        for (long v = -r; v <= r; ++v) {
            z[i] = v;
            self(self, i + 1, touched || v == r || v == -r);
        }
    };
    if (r == 0) {
        fn(z);
        return;
    }
    rec(rec, 0, false);
}

struct DoubleLattice {
    std::vector<std::vector<double>> a;  // matrix
    std::vector<double> beta;
};

DoubleLattice to_double_lattice(const ShiftedLattice& l) {
    const std::size_t d = l.dim();
    DoubleLattice out;
    out.a.assign(d, std::vector<double>(d));
    out.beta.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) out.a[i][j] = to_double(l.matrix.at(i, j));
        out.beta[i] = l.beta[i].approx();
    }
    return out;
}

std::vector<double> sample_point(const DoubleLattice& l, const std::vector<long>& z) {
    const std::size_t d = l.beta.size();
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
        double s = l.beta[i];
        for (std::size_t j = 0; j < d; ++j) s += l.a[i][j] * double(z[j]);
        x[i] = s;
    }
    return x;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Platform-independent uniform in [0,1).
struct Prng {
    std::uint64_t state;
    explicit Prng(std::uint64_t seed) : state(seed) {}
    double unit() {
        state = splitmix64(state);
        return double(state >> 11) * 0x1.0p-53;
    }
};

struct DoubleBand {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> boxes;
    bool contains(const std::vector<double>& x) const {
        for (const auto& [lo, hi] : boxes) {
            bool in = true;
            for (std::size_t i = 0; i < lo.size(); ++i)
                if (x[i] < lo[i] || x[i] >= hi[i]) {
                    in = false;
                    break;
                }
            if (in) return true;
        }
        return false;
    }
};

DoubleBand to_double_band(const Band& b) {
    DoubleBand out;
    for (const auto& box : b.boxes()) {
        std::vector<double> lo(box.dim()), hi(box.dim());
        for (std::size_t i = 0; i < box.dim(); ++i) {
            lo[i] = to_double(box.lower[i]);
            hi[i] = to_double(box.upper[i]);
        }
        out.boxes.emplace_back(std::move(lo), std::move(hi));
    }
    return out;
}

}  // namespace

SpectralFunction::SpectralFunction(std::vector<SpectralCell> cells) : cells_(std::move(cells)) {
    for (const auto& c : cells_)
        if (c.support.dim() != cells_[0].support.dim())
            throw std::invalid_argument("SpectralFunction: mixed cell dimensions");
}

double SpectralFunction::norm_squared() const {
    KahanReal acc;
    for (const auto& c : cells_) acc.add(std::norm(c.coeff) * to_double(c.support.volume()));
    return acc.s;
}

std::complex<double> SpectralFunction::evaluate(const std::vector<double>& x) const {
    KahanComplex acc;
    for (const auto& c : cells_) {
        std::complex<double> term = c.coeff;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double u = to_double(c.support.upper[i]);
            double l = to_double(c.support.lower[i]);
            if (x[i] == 0.0) {
                term *= u - l;
            } else {
                std::complex<double> diff = cis(x[i] * u) - cis(x[i] * l);
                term *= diff / std::complex<double>(0.0, kTwoPi * x[i]);
            }
        }
        acc.add(term);
    }
    return acc.value();
}

std::complex<double> SpectralFunction::spectrum_at(const std::vector<double>& xi) const {
    for (const auto& c : cells_) {
        bool in = true;
        for (std::size_t i = 0; i < xi.size(); ++i) {
            double l = to_double(c.support.lower[i]);
            double u = to_double(c.support.upper[i]);
            if (xi[i] < l || xi[i] >= u) {
                in = false;
                break;
            }
        }
        if (in) return c.coeff;
    }
    return {0.0, 0.0};
}

std::uint64_t derive_trial_seed(std::uint64_t seed, int trial) {
    return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(trial + 1)));
}

SpectralFunction random_element(const Band& E, int resolution, std::uint64_t seed) {
    if (resolution < 1) throw std::invalid_argument("random_element: resolution must be >= 1");
    Prng rng(splitmix64(seed));
    std::vector<SpectralCell> cells;
    const std::size_t d = E.dim();
    for (const auto& box : E.boxes()) {
        // resolution^d equal subcells per box, lexicographic order.
        std::vector<int> idx(d, 0);
        while (true) {
            RatVec lo(d), hi(d);
            for (std::size_t i = 0; i < d; ++i) {
                Rat w = (box.upper[i] - box.lower[i]) / resolution;
                lo[i] = box.lower[i] + w * idx[i];
                hi[i] = box.lower[i] + w * (idx[i] + 1);
            }
            std::complex<double> c{2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0};
            cells.push_back({Box(std::move(lo), std::move(hi)), c});
            std::size_t a = 0;
            while (a < d) {
                if (++idx[a] < resolution) break;
                idx[a] = 0;
                ++a;
            }
            if (a == d) break;
        }
    }
    return SpectralFunction(std::move(cells));
}

EnergyResult sampling_energy(const SpectralFunction& f, const LatticeSystem& sys,
                             const SamplingConfig& cfg) {
    if (cfg.radius < 1) throw std::invalid_argument("sampling config: radius must be >= 1");
    const std::size_t d = sys.dim();
    KahanReal total;
    double last_shell = 0;
    for (const auto& l : sys.lattices) {
        DoubleLattice dl = to_double_lattice(l);
        for (long r = 0; r <= cfg.radius; ++r) {
            KahanReal shell;
            for_each_shell_point(d, r, [&](const std::vector<long>& z) {
                shell.add(std::norm(f.evaluate(sample_point(dl, z))));
            });
            total.add(shell.s);
            if (r == cfg.radius) last_shell += shell.s;
        }
    }
    return {total.s, last_shell};
}

CorrelationResult cross_correlation(const SpectralFunction& f, const SpectralFunction& g,
                                    const LatticeSystem& sysA, const LatticeSystem& sysB,
                                    const SamplingConfig& cfg) {
    if (sysA.size() != sysB.size())
        throw std::invalid_argument("cross_correlation: paired systems must have equal length");
    const std::size_t d = sysA.dim();
    KahanComplex total;
    double last_shell = 0;
    for (std::size_t j = 0; j < sysA.size(); ++j) {
        DoubleLattice da = to_double_lattice(sysA.lattices[j]);
        DoubleLattice db = to_double_lattice(sysB.lattices[j]);
        for (long r = 0; r <= cfg.radius; ++r) {
            KahanComplex shell;
            for_each_shell_point(d, r, [&](const std::vector<long>& z) {
                shell.add(f.evaluate(sample_point(da, z)) *
                          std::conj(g.evaluate(sample_point(db, z))));
            });
            total.add(shell.value());
            if (r == cfg.radius) last_shell += std::abs(shell.value());
        }
    }
    return {total.value(), last_shell};
}

TightnessReport verify_tight(const Band& E, const LatticeSystem& sys,
                             const SamplingConfig& cfg) {
    TightnessReport rep;
    rep.candidate_constant = sys.frame_constant();
    double k = to_double(rep.candidate_constant);
    double lo = 0, hi = 0;
    rep.max_relative_deviation = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        SpectralFunction f = random_element(E, 2, derive_trial_seed(cfg.seed, t));
        double n2 = f.norm_squared();
        if (n2 == 0) continue;
        double ratio = sampling_energy(f, sys, cfg).value / n2;
        rep.ratios.push_back(ratio);
        rep.max_relative_deviation =
            std::max(rep.max_relative_deviation, std::abs(ratio - k) / k);
        if (rep.ratios.size() == 1) lo = hi = ratio;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    rep.spread = rep.ratios.empty() ? 0.0 : (hi - lo) / k;
    return rep;
}

OrthogonalityReport verify_orthogonal(const Band& E, const Band& F,
                                      const LatticeSystem& sysA, const LatticeSystem& sysB,
                                      const SamplingConfig& cfg) {
    OrthogonalityReport rep;
    rep.max_magnitude = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        SpectralFunction f = random_element(E, 2, derive_trial_seed(cfg.seed, 2 * t));
        SpectralFunction g = random_element(F, 2, derive_trial_seed(cfg.seed, 2 * t + 1));
        double nf = std::sqrt(f.norm_squared()), ng = std::sqrt(g.norm_squared());
        if (nf == 0 || ng == 0) continue;
        double mag = std::abs(cross_correlation(f, g, sysA, sysB, cfg).value) / (nf * ng);
        rep.magnitudes.push_back(mag);
        rep.max_magnitude = std::max(rep.max_magnitude, mag);
    }
    return rep;
}

std::complex<double> functional_bracket(const SpectralFunction& f,
                                           const SpectralFunction& g, const Band& E,
                                           const Band& F, const LatticeSystem& sysA,
                                           const LatticeSystem& sysB, long grid_points) {
    if (sysA.size() != sysB.size())
        throw std::invalid_argument("functional_bracket: systems must have equal length");
    const std::size_t d = sysA.dim();
    if (d != 1)
        throw std::invalid_argument("functional_bracket: quadrature implemented for d = 1");
    if (E.empty() || F.empty()) return {0.0, 0.0};

    DoubleBand dE = to_double_band(E), dF = to_double_band(F);
    auto [el, eu] = E.bounding_box();
    auto [fl, fu] = F.bounding_box();

    struct PerLattice {
        double a_dual, b_dual;       // A', B' (1x1)
        double beta, gamma;
        double inv_dets;             // 1 / |det A_j B_j|
        long me_lo, me_hi, mf_lo, mf_hi;
    };
    std::vector<PerLattice> ls;
    for (std::size_t j = 0; j < sysA.size(); ++j) {
        const auto& a = sysA.lattices[j];
        const auto& b = sysB.lattices[j];
        PerLattice p;
        p.a_dual = to_double(a.dual.at(0, 0));
        p.b_dual = to_double(b.dual.at(0, 0));
        p.beta = a.beta[0].approx();
        p.gamma = b.beta[0].approx();
        p.inv_dets = 1.0 / (to_double(a.absdet) * to_double(b.absdet));
        // m with A'(xi + m) inside the bounding interval of E, xi in [0,1].
        double lo = to_double(el[0]) / p.a_dual, hi = to_double(eu[0]) / p.a_dual;
        if (lo > hi) std::swap(lo, hi);
        p.me_lo = long(std::floor(lo)) - 1;
        p.me_hi = long(std::ceil(hi)) + 1;
        lo = to_double(fl[0]) / p.b_dual;
        hi = to_double(fu[0]) / p.b_dual;
        if (lo > hi) std::swap(lo, hi);
        p.mf_lo = long(std::floor(lo)) - 1;
        p.mf_hi = long(std::ceil(hi)) + 1;
        ls.push_back(p);
    }

    KahanComplex acc;
    for (long k = 0; k < grid_points; ++k) {
        double xi = (double(k) + 0.5) / double(grid_points);
        for (const auto& p : ls) {
            KahanComplex br1, br2;
            for (long m = p.me_lo; m <= p.me_hi; ++m) {
                double y = p.a_dual * (xi + double(m));
                if (!dE.contains({y})) continue;
                std::complex<double> fy = f.spectrum_at({y});
                if (fy == std::complex<double>(0.0, 0.0)) continue;
                br1.add(fy * cis(p.beta * y));
            }
            if (br1.value() == std::complex<double>(0.0, 0.0)) continue;
            for (long m = p.mf_lo; m <= p.mf_hi; ++m) {
                double y = p.b_dual * (xi + double(m));
                if (!dF.contains({y})) continue;
                std::complex<double> gy = g.spectrum_at({y});
                if (gy == std::complex<double>(0.0, 0.0)) continue;
                br2.add(cis(-p.gamma * y) * std::conj(gy));
            }
            acc.add(p.inv_dets * br1.value() * br2.value());
        }
    }
    return acc.value() / double(grid_points);
}

}  // namespace latsamp
