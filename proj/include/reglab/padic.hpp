#pragma once

#include <string>
#include <vector>

#include "reglab/rational.hpp"

namespace reglab {

/// Truncated p-adic scalar p^v * u with the unit known modulo p^m, i.e. the
/// value is known modulo p^(v+m).  A vanishing unit means "zero modulo
/// p^(v+m)".  Every operation propagates the minimum surviving modulus, so a
/// stored digit is always a guaranteed digit.
class PadicNumber {
  public:
    PadicNumber(long prime, long valuation, Integer unit, long precision);

    /// Exact embedding of a rational, carrying `precision` unit digits.
    static PadicNumber from_rational(long prime, const Rational& value, long precision);
    static PadicNumber from_integer(long prime, long value, long precision);
    /// Zero known modulo p^modulus.
    static PadicNumber zero(long prime, long modulus);

    long prime() const { return prime_; }
    long valuation() const { return valuation_; }  // meaningful when !is_zero()
    const Integer& unit() const { return unit_; }
    long precision() const { return precision_; }
    /// Exponent K such that the value is known modulo p^K.
    long known_modulus() const { return valuation_ + precision_; }
    bool is_zero() const { return unit_ == 0; }

    PadicNumber operator-() const;
    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber operator/(const PadicNumber& o) const;
    PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
    PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
    PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

    /// Equality at the shared tracked modulus.
    bool operator==(const PadicNumber& o) const { return (*this - o).is_zero(); }
    bool operator!=(const PadicNumber& o) const { return !(*this == o); }

    /// Integer representative of the value modulo p^min(known_modulus, cap).
    Integer lift(long cap) const;

    std::string to_string() const;

  private:
    long prime_;
    long valuation_;
    Integer unit_;
    long precision_;

    static PadicNumber from_lift(long prime, const Integer& n, long modulus_exp);
};

/// p-adic logarithm of u with v(u-1) >= 1 (>= 2 when p = 2); the alternating
/// series is summed until every remaining term provably vanishes at the
/// result's tracked modulus.
PadicNumber padic_log(const PadicNumber& u);

/// Binomial coefficient binom(lambda, k) by the falling-factorial product.
PadicNumber mahler_binomial(const PadicNumber& lambda, long k);
Rational mahler_binomial_exact(const Rational& lambda, long k);

/// Componentwise product binom(lambda_1, a_1) * ... * binom(lambda_r, a_r).
PadicNumber mahler_binomial(const std::vector<PadicNumber>& lambda, const std::vector<long>& alpha);

}  // namespace reglab
