#include "latsamp/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace latsamp {

void ExponentialSum::add(const Rat& coeff, const ShiftValue& phase) {
    if (coeff == 0) return;
    ShiftValue p = phase.is_exact() ? ShiftValue::from_rat(mod_one(phase.rat())) : phase;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->phase == p) {
            it->coeff += coeff;
            if (it->coeff == 0) terms_.erase(it);
            return;
        }
    }
    terms_.push_back({coeff, p});
}

bool ExponentialSum::all_exact() const {
    for (const auto& t : terms_)
        if (!t.phase.is_exact()) return false;
    return true;
}

std::complex<double> ExponentialSum::evaluate() const {
    // Kahan-compensated accumulation, real and imaginary parts separately.
    double sr = 0, si = 0, cr = 0, ci = 0;
    for (const auto& t : terms_) {
        double theta = -2.0 * std::numbers::pi * t.phase.approx();
        double c = to_double(t.coeff);
        double xr = c * std::cos(theta), xi = c * std::sin(theta);
        double yr = xr - cr;
        double tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = xi - ci;
        double ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    return {sr, si};
}

std::string ExponentialSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << " + ";
        os << rat_to_string(terms_[i].coeff) << "*e(-2pi i * " << terms_[i].phase.str() << ")";
    }
    return os.str();
}

namespace {

using Poly = std::vector<Int>;  // ascending coefficients

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

// Exact division of integer polynomials; remainder must vanish.
Poly poly_div_exact(const Poly& num, const Poly& den) {
    Poly r = num;
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (r.size() >= den.size() && !(r = poly_trim(std::move(r))).empty() &&
           r.size() >= den.size()) {
        std::size_t shift = r.size() - den.size();
        Int f = r.back() / den.back();
        q[shift] = f;
        for (std::size_t i = 0; i < den.size(); ++i) r[shift + i] -= f * den[i];
        if (r.back() != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
        r.pop_back();
    }
    return q;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(unsigned long n) {
    static std::map<unsigned long, Poly> cache;
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Poly num(n + 1, Int(0));  // x^n - 1
    num[0] = -1;
    num[n] = 1;
    Poly acc{Int(1)};
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        Poly phi_d = cyclotomic_polynomial(d);
        Poly next(acc.size() + phi_d.size() - 1, Int(0));
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < phi_d.size(); ++j) next[i + j] += acc[i] * phi_d[j];
        acc = std::move(next);
    }
    Poly phi = poly_div_exact(num, acc);
    cache[n] = phi;
    return phi;
}

bool is_zero_exact(const ExponentialSum& s) {
    if (!s.all_exact())
        throw std::domain_error("is_zero_exact: irrational phase present; use is_zero_numeric");
    if (s.empty()) return true;

    Int n_lcm(1);
    for (const auto& t : s.terms())
        mpz_lcm(n_lcm.get_mpz_t(), n_lcm.get_mpz_t(), t.phase.rat().get_den().get_mpz_t());
    if (!n_lcm.fits_ulong_p())
        throw std::domain_error("is_zero_exact: phase denominator too large");
    unsigned long n = n_lcm.get_ui();

    // P(x) = sum_j c_j x^{N theta_j}; the sum is P(zeta_N).
    std::vector<Rat> p(n, Rat(0));
    for (const auto& t : s.terms()) {
        Rat k = t.phase.rat() * Rat(Int(n));
        p[to_long(k.get_num())] += t.coeff;
    }

    Poly phi = cyclotomic_polynomial(n);
    // Remainder of P modulo the monic integer polynomial Phi_N.
    const std::size_t dphi = phi.size() - 1;
    for (std::size_t deg = p.size(); deg-- > dphi;) {
        if (p[deg] == 0) continue;
        Rat f = p[deg];
        std::size_t shift = deg - dphi;
        for (std::size_t i = 0; i <= dphi; ++i) p[shift + i] -= f * Rat(phi[i]);
    }
    for (const auto& c : p)
        if (c != 0) return false;
    return true;
}

NumericZeroVerdict is_zero_numeric(const ExponentialSum& s, double tol) {
    double mag = std::abs(s.evaluate());
    return {mag <= tol, mag};
}

}  // namespace latsamp
