#include "reglab/padic.hpp"

#include <sstream>

namespace reglab {

namespace {

Integer pow_p(long p, long e) { return pow_int(p, e); }

}  // namespace

PadicNumber::PadicNumber(long prime, long valuation, Integer unit, long precision)
    : prime_(prime), valuation_(valuation), unit_(std::move(unit)), precision_(precision) {
    if (prime_ < 2) throw DomainError("PadicNumber: prime must be >= 2");
    if (precision_ < 1) throw PrecisionError("PadicNumber: precision must be >= 1");
    if (unit_ != 0) {
        if (mpz_divisible_ui_p(unit_.get_mpz_t(), static_cast<unsigned long>(prime_)))
            throw DomainError("PadicNumber: unit divisible by p");
        if (unit_ < 0 || unit_ >= pow_p(prime_, precision_))
            throw DomainError("PadicNumber: unit out of range [0, p^m)");
    }
}

PadicNumber PadicNumber::zero(long prime, long modulus) {
    if (modulus < 1) throw PrecisionError("PadicNumber::zero: modulus must be >= 1");
    return PadicNumber(prime, 0, Integer(0), modulus);
}

PadicNumber PadicNumber::from_lift(long prime, const Integer& n, long modulus_exp) {
    if (modulus_exp < 1) throw PrecisionError("PadicNumber: no surviving precision");
    Integer r = n % pow_p(prime, modulus_exp);
    if (r < 0) r += pow_p(prime, modulus_exp);
    if (r == 0) return zero(prime, modulus_exp);
    long v = int_valuation(r, prime);
    Integer u = r / pow_p(prime, v);
    return PadicNumber(prime, v, u, modulus_exp - v);
}

PadicNumber PadicNumber::from_rational(long prime, const Rational& value, long precision) {
    if (precision < 1) throw PrecisionError("from_rational: precision must be >= 1");
    if (reglab::is_zero(value)) return zero(prime, precision);
    long v = rational_valuation(value, prime);
    Integer num = value.get_num(), den = value.get_den();
    if (v > 0) num /= pow_p(prime, v);
    if (v < 0) den /= pow_p(prime, -v);
    Integer mod = pow_p(prime, precision);
    Integer den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw DomainError("from_rational: denominator not invertible mod p^m");
    Integer u = (num % mod) * den_inv % mod;
    if (u < 0) u += mod;
    return PadicNumber(prime, v, u, precision);
}

PadicNumber PadicNumber::from_integer(long prime, long value, long precision) {
    return from_rational(prime, rat(value), precision);
}

Integer PadicNumber::lift(long cap) const {
    long k = std::min(cap, known_modulus());
    if (k < 1) throw PrecisionError("lift: no guaranteed digits below cap");
    if (is_zero()) return Integer(0);
    if (valuation_ < 0) throw DomainError("lift: negative valuation");
    Integer r = pow_p(prime_, valuation_) * unit_ % pow_p(prime_, k);
    return r;
}

PadicNumber PadicNumber::operator-() const {
    if (is_zero()) return *this;
    Integer mod = pow_p(prime_, precision_);
    Integer u = (mod - unit_) % mod;
    return PadicNumber(prime_, valuation_, u, precision_);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (prime_ != o.prime_) throw DomainError("PadicNumber: mixed primes");
    long k = std::min(known_modulus(), o.known_modulus());
    if (k < 1) throw PrecisionError("PadicNumber::+: no surviving precision");
    long va = is_zero() ? known_modulus() : valuation_;
    long vb = o.is_zero() ? o.known_modulus() : o.valuation_;
    long base = std::min(va, vb);
    if (base >= k) return zero(prime_, k);  // both vanish at the shared modulus
    // work relative to p^base so negative valuations stay integral
    Integer a = is_zero() ? Integer(0) : unit_ * pow_p(prime_, valuation_ - base);
    Integer b = o.is_zero() ? Integer(0) : o.unit_ * pow_p(prime_, o.valuation_ - base);
    long rel = k - base;
    PadicNumber shifted = from_lift(prime_, a + b, rel);
    if (shifted.is_zero()) return zero(prime_, base + rel);
    return PadicNumber(prime_, shifted.valuation_ + base, shifted.unit_, shifted.precision_);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (prime_ != o.prime_) throw DomainError("PadicNumber: mixed primes");
    if (is_zero() || o.is_zero()) {
        // 0 (mod p^K) * x = 0 (mod p^(K + v(x))), and K+K' for two zeros
        long k = is_zero() ? known_modulus() : valuation_;
        long k2 = o.is_zero() ? o.known_modulus() : o.valuation_;
        long mod = k + k2;
        if (mod < 1) throw PrecisionError("PadicNumber::*: no surviving precision");
        return zero(prime_, mod);
    }
    long m = std::min(precision_, o.precision_);
    Integer mod = pow_p(prime_, m);
    Integer u = unit_ * o.unit_ % mod;
    return PadicNumber(prime_, valuation_ + o.valuation_, u, m);
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
    if (prime_ != o.prime_) throw DomainError("PadicNumber: mixed primes");
    if (o.is_zero()) throw DomainError("PadicNumber: division by (tracked) zero");
    long m = o.precision_;
    Integer mod = pow_p(prime_, m);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), o.unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw DomainError("PadicNumber: unit not invertible");
    PadicNumber recip(prime_, -o.valuation_, inv, m);
    return *this * recip;
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "O(" << prime_ << "^" << known_modulus() << ")";
        return os.str();
    }
    os << unit_.get_str();
    if (valuation_ != 0) os << "*" << prime_ << "^" << valuation_;
    os << " + O(" << prime_ << "^" << known_modulus() << ")";
    return os.str();
}

PadicNumber padic_log(const PadicNumber& u) {
    const long p = u.prime();
    PadicNumber z = u - PadicNumber::from_integer(p, 1, u.precision());
    const long required = (p == 2) ? 2 : 1;
    if (!z.is_zero() && z.valuation() < required)
        throw DomainError("padic_log: v(u-1) below the convergence bound");
    if (z.is_zero()) return z;  // log 1 = 0 at the tracked modulus

    const long c = z.valuation();
    const long target = u.known_modulus();
    PadicNumber acc = PadicNumber::zero(p, target);
    PadicNumber zpow = z;
    for (long a = 1;; ++a) {
        if (a > 1) zpow = zpow * z;
        PadicNumber term = zpow / PadicNumber::from_integer(p, a, u.precision() + 2 * (legendre_valuation(a, p) + 1));
        if (a % 2 == 0) term = -term;
        acc += term;
        // every later term has valuation >= (a+1)c - log_p(a+1); once that
        // clears the accumulator's modulus the tail is invisible
        long bound = acc.known_modulus();
        // exact check p^((a+1)c - bound) > a+1  ==>  (a+1)c - v_p(a+1) >= bound for all later indices
        long e = (a + 1) * c - bound;
        if (e >= 0 && pow_int(p, e) > a + 1) break;
        if (a > 64 * (bound + 4)) throw PrecisionError("padic_log: series failed to close");
    }
    return acc;
}

Rational mahler_binomial_exact(const Rational& lambda, long k) {
    if (k < 0) throw DomainError("mahler_binomial: negative lower index");
    Rational num = rat(1);
    for (long j = 0; j < k; ++j) num *= lambda - rat(j);
    return num / Rational(factorial(k));
}

PadicNumber mahler_binomial(const PadicNumber& lambda, long k) {
    if (k < 0) throw DomainError("mahler_binomial: negative lower index");
    const long p = lambda.prime();
    PadicNumber acc = PadicNumber::from_integer(p, 1, lambda.precision());
    for (long j = 0; j < k; ++j)
        acc = acc * (lambda - PadicNumber::from_integer(p, j, lambda.precision()));
    return acc / PadicNumber::from_rational(p, Rational(factorial(k)),
                                            lambda.precision() + legendre_valuation(k, p) + 1);
}

PadicNumber mahler_binomial(const std::vector<PadicNumber>& lambda, const std::vector<long>& alpha) {
    if (lambda.size() != alpha.size()) throw DomainError("mahler_binomial: rank mismatch");
    if (lambda.empty()) throw DomainError("mahler_binomial: empty input");
    PadicNumber acc = mahler_binomial(lambda[0], alpha[0]);
    for (size_t i = 1; i < lambda.size(); ++i) acc = acc * mahler_binomial(lambda[i], alpha[i]);
    return acc;
}

}  // namespace reglab
