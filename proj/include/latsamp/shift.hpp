#pragma once

// Shift components are exact rationals in the normal path; decimal (irrational)
// shifts are carried as doubles and demote any verdict that touches them from
// "exact" to "numeric".

#include "latsamp/linalg.hpp"
#include "latsamp/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace latsamp {

class ShiftValue {
public:
    ShiftValue() : exact_(true), rat_(0), approx_(0.0) {}

    static ShiftValue from_rat(Rat r) {
        ShiftValue v;
        v.exact_ = true;
        v.approx_ = to_double(r);
        v.rat_ = std::move(r);
        return v;
    }

    static ShiftValue from_double(double x) {
        ShiftValue v;
        v.exact_ = false;
        v.rat_ = 0;
        v.approx_ = x;
        return v;
    }

    bool is_exact() const { return exact_; }

    const Rat& rat() const {
        if (!exact_) throw std::logic_error("shift value is not exact");
        return rat_;
    }

    double approx() const { return approx_; }

    ShiftValue operator+(const ShiftValue& o) const {
        if (exact_ && o.exact_) return from_rat(rat_ + o.rat_);
        return from_double(approx_ + o.approx_);
    }

    ShiftValue operator-(const ShiftValue& o) const {
        if (exact_ && o.exact_) return from_rat(rat_ - o.rat_);
        return from_double(approx_ - o.approx_);
    }

    ShiftValue operator*(const Rat& r) const {
        if (exact_) return from_rat(rat_ * r);
        return from_double(approx_ * to_double(r));
    }

    bool is_zero() const { return exact_ ? rat_ == 0 : approx_ == 0.0; }

    // Exact values compare by value; inexact ones bitwise. An exact and an
    // inexact value are never equal, so groupings stay well defined.
    bool operator==(const ShiftValue& o) const {
        if (exact_ != o.exact_) return false;
        return exact_ ? rat_ == o.rat_ : approx_ == o.approx_;
    }

    bool less(const ShiftValue& o) const {
        if (exact_ != o.exact_) return exact_;
        if (exact_) return rat_ < o.rat_;
        return approx_ < o.approx_;
    }

    std::string str() const {
        return exact_ ? rat_to_string(rat_) : std::to_string(approx_);
    }

private:
    bool exact_;
    Rat rat_;
    double approx_;
};

using ShiftVector = std::vector<ShiftValue>;

inline ShiftVector shift_from_rat_vec(const RatVec& v) {
    ShiftVector s;
    s.reserve(v.size());
    for (const auto& r : v) s.push_back(ShiftValue::from_rat(r));
    return s;
}

inline bool shift_is_exact(const ShiftVector& s) {
    for (const auto& v : s)
        if (!v.is_exact()) return false;
    return true;
}

inline bool shift_is_zero(const ShiftVector& s) {
    for (const auto& v : s)
        if (!v.is_zero()) return false;
    return true;
}

inline RatVec shift_exact_vec(const ShiftVector& s) {
    RatVec v;
    v.reserve(s.size());
    for (const auto& x : s) v.push_back(x.rat());
    return v;
}

inline ShiftVector shift_sub(const ShiftVector& a, const ShiftVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("shift_sub: dimension mismatch");
    ShiftVector r;
    r.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
    return r;
}

// theta = s . alpha, exact when every component of s is exact.
inline ShiftValue shift_dot(const ShiftVector& s, const RatVec& alpha) {
    if (s.size() != alpha.size()) throw std::invalid_argument("shift_dot: dimension mismatch");
    if (shift_is_exact(s)) {
        Rat acc(0);
        for (std::size_t i = 0; i < s.size(); ++i) acc += s[i].rat() * alpha[i];
        return ShiftValue::from_rat(acc);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += s[i].approx() * to_double(alpha[i]);
    return ShiftValue::from_double(acc);
}

// M . s for a rational matrix M.
inline ShiftVector shift_matvec(const RatMat& M, const ShiftVector& s) {
    if (s.size() != M.dim()) throw std::invalid_argument("shift_matvec: dimension mismatch");
    ShiftVector out;
    out.reserve(M.dim());
    for (std::size_t i = 0; i < M.dim(); ++i) {
        ShiftValue acc = ShiftValue::from_rat(Rat(0));
        for (std::size_t j = 0; j < M.dim(); ++j) acc = acc + s[j] * M.at(i, j);
        out.push_back(acc);
    }
    return out;
}

inline bool shift_lex_less(const ShiftVector& a, const ShiftVector& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].less(b[i])) return true;
        if (b[i].less(a[i])) return false;
    }
    return a.size() < b.size();
}

}  // namespace latsamp
