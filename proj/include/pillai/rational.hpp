#pragma once

#include <gmpxx.h>

#include <string>

#include "pillai/errors.hpp"

namespace pillai {

// Arbitrary-precision exact arithmetic. mpq_class keeps values canonical
// (gcd(|num|, den) = 1, den >= 1) as long as construction goes through
// make_rational or ordinary arithmetic.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(Integer num, Integer den) {
    if (den == 0) {
        throw DomainError(ErrorKind::ZeroDenominator, "rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer floor_to_integer(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline long floor_to_long(const Rational& q) {
    Integer r = floor_to_integer(q);
    if (!r.fits_slong_p()) {
        throw InternalError("value does not fit in machine integer: " + r.get_str());
    }
    return r.get_si();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Canonical decimal-free text form: "p" or "p/q" with q > 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace pillai
