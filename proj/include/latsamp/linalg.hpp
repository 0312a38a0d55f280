#pragma once

// Small dense exact linear algebra: d-vectors and d x d matrices of rationals
// with exact determinant and inverse (Gauss-Jordan over mpq).

#include "latsamp/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace latsamp {

using RatVec = std::vector<Rat>;

inline RatVec zero_vec(std::size_t d) { return RatVec(d, Rat(0)); }

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec neg(const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

class RatMat {
public:
    RatMat() = default;
    explicit RatMat(std::size_t d) : d_(d), e_(d * d, Rat(0)) {}
    RatMat(std::size_t d, std::vector<Rat> entries) : d_(d), e_(std::move(entries)) {
        if (e_.size() != d_ * d_) throw std::invalid_argument("RatMat: wrong entry count");
    }

    static RatMat identity(std::size_t d) {
        RatMat m(d);
        for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1;
        return m;
    }

    static RatMat diagonal(const RatVec& diag) {
        RatMat m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m.at(i, i) = diag[i];
        return m;
    }

    std::size_t dim() const { return d_; }
    Rat& at(std::size_t i, std::size_t j) { return e_[i * d_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return e_[i * d_ + j]; }

    RatVec row(std::size_t i) const {
        RatVec r(d_);
        for (std::size_t j = 0; j < d_; ++j) r[j] = at(i, j);
        return r;
    }

    RatVec apply(const RatVec& x) const {
        if (x.size() != d_) throw std::invalid_argument("apply: dimension mismatch");
        RatVec y(d_, Rat(0));
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) y[i] += at(i, j) * x[j];
        return y;
    }

    RatMat transpose() const {
        RatMat t(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    RatMat mul(const RatMat& o) const {
        if (o.d_ != d_) throw std::invalid_argument("mul: dimension mismatch");
        RatMat p(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t k = 0; k < d_; ++k)
                for (std::size_t j = 0; j < d_; ++j) p.at(i, j) += at(i, k) * o.at(k, j);
        return p;
    }

    Rat determinant() const {
        RatMat a(*this);
        Rat det(1);
        for (std::size_t c = 0; c < d_; ++c) {
            std::size_t p = c;
            while (p < d_ && a.at(p, c) == 0) ++p;
            if (p == d_) return Rat(0);
            if (p != c) {
                for (std::size_t j = 0; j < d_; ++j) std::swap(a.at(p, j), a.at(c, j));
                det = -det;
            }
            det *= a.at(c, c);
            for (std::size_t r = c + 1; r < d_; ++r) {
                if (a.at(r, c) == 0) continue;
                Rat f = a.at(r, c) / a.at(c, c);
                for (std::size_t j = c; j < d_; ++j) a.at(r, j) -= f * a.at(c, j);
            }
        }
        return det;
    }

    RatMat inverse() const {
        RatMat a(*this);
        RatMat inv = identity(d_);
        for (std::size_t c = 0; c < d_; ++c) {
            std::size_t p = c;
            while (p < d_ && a.at(p, c) == 0) ++p;
            if (p == d_) throw std::domain_error("inverse of singular matrix");
            if (p != c)
                for (std::size_t j = 0; j < d_; ++j) {
                    std::swap(a.at(p, j), a.at(c, j));
                    std::swap(inv.at(p, j), inv.at(c, j));
                }
            Rat piv = a.at(c, c);
            for (std::size_t j = 0; j < d_; ++j) {
                a.at(c, j) /= piv;
                inv.at(c, j) /= piv;
            }
            for (std::size_t r = 0; r < d_; ++r) {
                if (r == c || a.at(r, c) == 0) continue;
                Rat f = a.at(r, c);
                for (std::size_t j = 0; j < d_; ++j) {
                    a.at(r, j) -= f * a.at(c, j);
                    inv.at(r, j) -= f * inv.at(c, j);
                }
            }
        }
        return inv;
    }

    // C' = C^{*-1}; entries are real rationals, so conjugation is transposition.
    RatMat dual() const { return transpose().inverse(); }

    bool operator==(const RatMat& o) const { return d_ == o.d_ && e_ == o.e_; }

private:
    std::size_t d_ = 0;
    std::vector<Rat> e_;
};

// Lexicographic order on exact vectors; used for canonical sorting everywhere.
inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

}  // namespace latsamp
