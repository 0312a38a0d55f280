#pragma once

// Exact zero-testing of finite sums  sum_j c_j e^{-2 pi i theta_j}  with
// rational coefficients.  For rational phases the sum is an algebraic number:
// with N the common phase denominator it vanishes iff the N-th cyclotomic
// polynomial divides  sum_j c_j x^{N theta_j}.  Irrational phases fall back
// to compensated numeric evaluation.

#include "latsamp/rational.hpp"
#include "latsamp/shift.hpp"

#include <complex>
#include <string>
#include <vector>

namespace latsamp {

struct ExpTerm {
    Rat coeff;
    ShiftValue phase;  // theta in c * e^{-2 pi i theta}; exact phases live in [0,1)
};

class ExponentialSum {
public:
    void add(const Rat& coeff, const ShiftValue& phase);
    void add_exact(const Rat& coeff, const Rat& phase) {
        add(coeff, ShiftValue::from_rat(phase));
    }
    void add_numeric(const Rat& coeff, double phase) {
        add(coeff, ShiftValue::from_double(phase));
    }

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool all_exact() const;
    bool empty() const { return terms_.empty(); }

    std::complex<double> evaluate() const;
    std::string str() const;

private:
    std::vector<ExpTerm> terms_;  // equal phases merged; zero coefficients dropped
};

// True iff the sum is exactly zero as an algebraic number. Throws
// std::domain_error if an irrational phase is present.
bool is_zero_exact(const ExponentialSum& s);

struct NumericZeroVerdict {
    bool zero;
    double magnitude;
};

NumericZeroVerdict is_zero_numeric(const ExponentialSum& s, double tol);

// Coefficients of Phi_N, ascending degree. Phi_1 = x - 1.
std::vector<Int> cyclotomic_polynomial(unsigned long n);

}  // namespace latsamp
