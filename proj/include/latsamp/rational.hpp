#pragma once

// Exact rational scalars backed by GMP. Everything in the exact path of the
// library goes through mpq_class; no floating point is allowed to leak in.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latsamp {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p/q" or "p/q". Rejects floats and zero denominators.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
        throw std::invalid_argument("rational literal must be \"p\" or \"p/q\", got: " + s);
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal: " + s);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Int floor_int(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int ceil_int(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// r reduced into [0,1).
inline Rat mod_one(const Rat& r) {
    Rat f = r - Rat(floor_int(r));
    f.canonicalize();
    return f;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer out of long range");
    return z.get_si();
}

}  // namespace latsamp
