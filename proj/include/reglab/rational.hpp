#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "reglab/errors.hpp"

namespace reglab {

// Exact rationals. GMP keeps them canonical (gcd(num, den) = 1, den > 0),
// which is exactly the invariant we need; all arithmetic is lossless.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// v_p of a nonzero integer.
inline long int_valuation(Integer n, long p) {
    if (n == 0) throw DomainError("int_valuation: v_p(0) is infinite");
    long v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        n /= p;
        ++v;
    }
    return v;
}

/// v_p of a nonzero rational.
inline long rational_valuation(const Rational& q, long p) {
    if (is_zero(q)) throw DomainError("rational_valuation: v_p(0) is infinite");
    long v = 0;
    Integer num = q.get_num(), den = q.get_den();
    if (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p)))
        v += int_valuation(num, p);
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        v -= int_valuation(den, p);
    return v;
}

inline Integer pow_int(long base, long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
    return r;
}

inline Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// v_p(n!) by Legendre's formula.
inline long legendre_valuation(long n, long p) {
    long v = 0;
    for (long q = p; q <= n; q *= p) v += n / q;
    return v;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace reglab
