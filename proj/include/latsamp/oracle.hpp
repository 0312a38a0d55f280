#pragma once

// Independent numeric verification. Elements of V_E with piecewise-constant
// spectra evaluate in closed form (products of modulated sinc differences), so
// the only numeric error in the sampling sums is the truncation tail.

#include "latsamp/geometry.hpp"
#include "latsamp/lattice.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace latsamp {

struct SpectralCell {
    Box support;
    std::complex<double> coeff;
};

// f with f_hat = sum over cells of coeff * indicator(box); Fourier convention
// f_hat(xi) = int f(x) e^{-2 pi i x.xi} dx.
class SpectralFunction {
public:
    SpectralFunction() = default;
    explicit SpectralFunction(std::vector<SpectralCell> cells);

    const std::vector<SpectralCell>& cells() const { return cells_; }
    std::size_t dim() const { return cells_.empty() ? 0 : cells_[0].support.dim(); }
    bool zero() const { return cells_.empty(); }

    // || f ||^2 = sum |c|^2 vol(box)  (Plancherel).
    double norm_squared() const;

    // Closed-form evaluation; no grid approximation.
    std::complex<double> evaluate(const std::vector<double>& x) const;

    // f_hat at a frequency point (cells are half-open).
    std::complex<double> spectrum_at(const std::vector<double>& xi) const;

private:
    std::vector<SpectralCell> cells_;
};

struct SamplingConfig {
    long radius = 1000;      // truncation: sup-norm bound on z
    int trials = 8;
    std::uint64_t seed = 42;
    double tolerance = 1e-2;
};

// Deterministic in (E, resolution, seed): each box of E is split into
// resolution^d subcells with pseudo-random unit-scale complex coefficients.
SpectralFunction random_element(const Band& E, int resolution, std::uint64_t seed);

std::uint64_t derive_trial_seed(std::uint64_t seed, int trial);

struct EnergyResult {
    double value;       // truncated || Theta f ||^2
    double last_shell;  // contribution of the outermost shell (tail estimate)
};

EnergyResult sampling_energy(const SpectralFunction& f, const LatticeSystem& sys,
                             const SamplingConfig& cfg);

struct CorrelationResult {
    std::complex<double> value;  // truncated < Theta_A f, Theta_B g >
    double last_shell;
};

CorrelationResult cross_correlation(const SpectralFunction& f, const SpectralFunction& g,
                                    const LatticeSystem& sysA, const LatticeSystem& sysB,
                                    const SamplingConfig& cfg);

struct TightnessReport {
    Rat candidate_constant;         // K = sum |det A_j|^{-1}
    std::vector<double> ratios;     // K-hat per trial
    double max_relative_deviation;  // max |K-hat - K| / K
    double spread;                  // (max - min) / K across trials
};

TightnessReport verify_tight(const Band& E, const LatticeSystem& sys,
                             const SamplingConfig& cfg);

// Frequency-side bracket-product quadrature for < Theta_A f, Theta_B g >;
// grid_points midpoint nodes per dimension over the unit cube.
std::complex<double> functional_bracket(const SpectralFunction& f,
                                           const SpectralFunction& g, const Band& E,
                                           const Band& F, const LatticeSystem& sysA,
                                           const LatticeSystem& sysB, long grid_points);

struct OrthogonalityReport {
    std::vector<double> magnitudes;  // |corr| / (||f|| ||g||) per trial
    double max_magnitude;
};

OrthogonalityReport verify_orthogonal(const Band& E, const Band& F,
                                      const LatticeSystem& sysA, const LatticeSystem& sysB,
                                      const SamplingConfig& cfg);

}  // namespace latsamp
