#include "reglab/group_algebra.hpp"

#include <functional>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

GroupAlgebraContext::GroupAlgebraContext(long p_, int r_, int D_, long m_, std::vector<Rational> w)
    : p(p_), r(r_), D(D_), m(m_), weights(std::move(w)) {
    if (!is_prime(p)) throw DomainError("GroupAlgebraContext: p must be prime");
    if (p == 2)
        throw DomainError("GroupAlgebraContext: p = 2 violates omega > 1/(p-1) for the default model");
    if (r < 1 || D < 1 || m < 1) throw DomainError("GroupAlgebraContext: positive r, D, m required");
    if (weights.empty()) weights.assign(r, rat(1));
    if (static_cast<int>(weights.size()) != r) throw DomainError("GroupAlgebraContext: weight count != r");
    const Rational bound = Rational(1) / Rational(p - 1);
    for (const auto& w0 : weights)
        if (!(w0 > bound)) throw DomainError("GroupAlgebraContext: weights must exceed 1/(p-1)");
}

void GroupAlgebraElement::set(const MultiIndex& a, const PadicNumber& v) {
    if (static_cast<int>(a.size()) != ctx_->r) throw DomainError("GroupAlgebraElement: rank mismatch");
    if (degree(a) > ctx_->D) throw TruncationError("GroupAlgebraElement: degree exceeds the bound");
    coeffs_.insert_or_assign(a, v);
}

PadicNumber GroupAlgebraElement::get(const MultiIndex& a) const {
    auto it = coeffs_.find(a);
    if (it != coeffs_.end()) return it->second;
    return PadicNumber::zero(ctx_->p, ctx_->m);
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (const auto& [a, v] : o.coeffs_) {
        auto it = r.coeffs_.find(a);
        if (it == r.coeffs_.end())
            r.coeffs_.insert_or_assign(a, v);
        else
            it->second = it->second + v;
    }
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator-(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r = *this;
    for (const auto& [a, v] : o.coeffs_) {
        auto it = r.coeffs_.find(a);
        if (it == r.coeffs_.end())
            r.coeffs_.insert_or_assign(a, -v);
        else
            it->second = it->second - v;
    }
    return r;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
    GroupAlgebraElement r(*ctx_);
    for (const auto& [a, va] : coeffs_)
        for (const auto& [b, vb] : o.coeffs_) {
            MultiIndex c(a.size());
            int deg = 0;
            for (size_t i = 0; i < a.size(); ++i) {
                c[i] = a[i] + b[i];
                deg += c[i];
            }
            if (deg > ctx_->D) continue;  // truncation
            auto it = r.coeffs_.find(c);
            if (it == r.coeffs_.end())
                r.coeffs_.insert_or_assign(c, va * vb);
            else
                it->second = it->second + va * vb;
        }
    return r;
}

GroupAlgebraElement GroupAlgebraElement::scale(const PadicNumber& s) const {
    GroupAlgebraElement r(*ctx_);
    for (const auto& [a, v] : coeffs_) r.coeffs_.insert_or_assign(a, v * s);
    return r;
}

ExtendedValuation valuation_w(const GroupAlgebraElement& x) {
    ExtendedValuation out;
    const auto& ctx = x.ctx();
    for (const auto& [a, v] : x.coeffs()) {
        if (v.is_zero()) continue;  // zero at tracked precision: not a stored value
        Rational w = rat(v.valuation());
        for (int i = 0; i < ctx.r; ++i) w += rat(a[i]) * ctx.weights[i];
        if (out.infinite || w < out.value) {
            out.infinite = false;
            out.value = w;
        }
    }
    return out;
}

bool saturation_member(const GroupAlgebraElement& x) {
    ExtendedValuation w = valuation_w(x);
    return w.infinite || w.value >= 0;
}

GroupAlgebraElement partial_element(const GroupAlgebraContext& ctx, int i) {
    if (i < 1 || i > ctx.r) throw DomainError("partial_element: coordinate out of range");
    GroupAlgebraElement out(ctx);
    for (int a = 1; a <= ctx.D; ++a) {
        Rational c = Rational(a % 2 == 1 ? 1 : -1) / Rational(a);
        long guard = legendre_valuation(a, ctx.p) + 1;
        PadicNumber coeff = PadicNumber::from_rational(ctx.p, c, ctx.m + guard);
        if (coeff.known_modulus() < 1)
            throw PrecisionError("partial_element: division by the index exhausted precision");
        MultiIndex mi(ctx.r, 0);
        mi[i - 1] = a;
        out.set(mi, coeff);
    }
    return out;
}

GroupAlgebraElement saturation_generator(const GroupAlgebraContext& ctx, const MultiIndex& alpha) {
    GroupAlgebraElement out(ctx);
    Integer fact(1);
    for (int a : alpha) fact *= factorial(a);
    out.set(alpha, PadicNumber::from_rational(ctx.p, Rational(1) / Rational(fact),
                                              ctx.m + legendre_valuation(degree(alpha), ctx.p) + 1));
    return out;
}

void GroupAlgebraTensor::add(const MultiIndex& a, const MultiIndex& b, const PadicNumber& v) {
    if (degree(a) + degree(b) > ctx_->D) throw TruncationError("GroupAlgebraTensor: bidegree exceeds the bound");
    auto key = std::make_pair(a, b);
    auto it = coeffs_.find(key);
    if (it == coeffs_.end())
        coeffs_.insert_or_assign(key, v);
    else
        it->second = it->second + v;
}

GroupAlgebraTensor GroupAlgebraTensor::operator-(const GroupAlgebraTensor& o) const {
    GroupAlgebraTensor r = *this;
    for (const auto& [k, v] : o.coeffs_) {
        auto it = r.coeffs_.find(k);
        if (it == r.coeffs_.end())
            r.coeffs_.insert_or_assign(k, -v);
        else
            it->second = it->second - v;
    }
    return r;
}

GroupAlgebraTensor GroupAlgebraTensor::operator*(const GroupAlgebraTensor& o) const {
    GroupAlgebraTensor r(*ctx_);
    for (const auto& [k1, v1] : coeffs_)
        for (const auto& [k2, v2] : o.coeffs_) {
            MultiIndex a(k1.first.size()), b(k1.second.size());
            int deg = 0;
            for (size_t i = 0; i < a.size(); ++i) {
                a[i] = k1.first[i] + k2.first[i];
                b[i] = k1.second[i] + k2.second[i];
                deg += a[i] + b[i];
            }
            if (deg > ctx_->D) continue;
            auto key = std::make_pair(a, b);
            auto it = r.coeffs_.find(key);
            if (it == r.coeffs_.end())
                r.coeffs_.insert_or_assign(key, v1 * v2);
            else
                it->second = it->second + v1 * v2;
        }
    return r;
}

GroupAlgebraTensor coproduct(const GroupAlgebraElement& x) {
    const auto& ctx = x.ctx();
    GroupAlgebraTensor out(ctx);
    // Delta(z^alpha) as the product over coordinates of Delta(z_i)^{alpha_i}
    for (const auto& [alpha, v] : x.coeffs()) {
        GroupAlgebraTensor term(ctx);
        term.add(MultiIndex(ctx.r, 0), MultiIndex(ctx.r, 0), PadicNumber::from_integer(ctx.p, 1, ctx.m));
        for (int i = 0; i < ctx.r; ++i) {
            GroupAlgebraTensor gen(ctx);
            MultiIndex e(ctx.r, 0), z(ctx.r, 0);
            e[i] = 1;
            PadicNumber one = PadicNumber::from_integer(ctx.p, 1, ctx.m);
            gen.add(e, z, one);
            gen.add(z, e, one);
            gen.add(e, e, one);
            for (int rep = 0; rep < alpha[i]; ++rep) term = term * gen;
        }
        for (const auto& [k, w] : term.coeffs()) out.add(k.first, k.second, w * v);
    }
    return out;
}

PrimitivityReport primitivity_check(const GroupAlgebraElement& x) {
    const auto& ctx = x.ctx();
    PrimitivityReport rep(ctx);
    GroupAlgebraTensor delta = coproduct(x);
    GroupAlgebraTensor expected(ctx);
    MultiIndex zero(ctx.r, 0);
    for (const auto& [a, v] : x.coeffs()) {
        expected.add(a, zero, v);
        expected.add(zero, a, v);
    }
    rep.residual = delta - expected;
    for (const auto& [k, v] : rep.residual.coeffs()) {
        rep.residual_moduli.push_back(v.known_modulus());
        if (!v.is_zero()) rep.primitive_at_precision = false;
    }
    return rep;
}

AmiceSeries amice_transform(const Distribution& mu) {
    AmiceSeries s;
    s.r = mu.r;
    s.D = mu.D;
    s.a = mu.rho;
    return s;
}

Distribution amice_inverse(const AmiceSeries& series) {
    Distribution mu;
    mu.r = series.r;
    mu.D = series.D;
    mu.rho = series.a;
    return mu;
}

Distribution distribution_of(const GroupAlgebraElement& x) {
    Distribution mu;
    mu.r = x.ctx().r;
    mu.D = x.ctx().D;
    mu.rho = x.coeffs();
    return mu;
}

GroupAlgebraElement group_algebra_of(const GroupAlgebraContext& ctx, const Distribution& mu) {
    GroupAlgebraElement x(ctx);
    for (const auto& [a, v] : mu.rho) x.set(a, v);
    return x;
}

Distribution dirac(long p, int r, int D, long precision, const std::vector<long>& point) {
    if (static_cast<int>(point.size()) != r) throw DomainError("dirac: rank mismatch");
    Distribution mu;
    mu.r = r;
    mu.D = D;
    std::vector<PadicNumber> lambda;
    for (long x : point) lambda.push_back(PadicNumber::from_integer(p, x, precision));
    // iterate alpha with |alpha| <= D
    MultiIndex alpha(r, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == r) {
            PadicNumber v = mahler_binomial(lambda, std::vector<long>(alpha.begin(), alpha.end()));
            if (!v.is_zero()) mu.rho.insert_or_assign(alpha, v);
            return;
        }
        for (int a = 0; a <= remaining; ++a) {
            alpha[pos] = a;
            rec(pos + 1, remaining - a);
        }
        alpha[pos] = 0;
    };
    rec(0, D);
    return mu;
}

PadicNumber pair_distribution(long p, long precision, const Distribution& mu, const MahlerSeries& f) {
    if (mu.r != f.r || mu.D != f.D) throw DomainError("pair_distribution: shape mismatch");
    std::optional<PadicNumber> acc;
    for (const auto& [a, c] : f.c) {
        auto it = mu.rho.find(a);
        if (it == mu.rho.end()) continue;
        PadicNumber term = c * it->second;
        acc = acc ? (*acc + term) : term;
    }
    return acc ? *acc : PadicNumber::zero(p, precision);
}

AnalyticityVerdict local_analyticity_test(long p, const MahlerSeries& f, const Rational& threshold) {
    AnalyticityVerdict v;
    v.threshold = threshold;
    v.rate_infinite = true;
    v.rate = rat(0);
    const int lo = (f.D + 1) / 2;
    if (f.D < 2) throw DomainError("local_analyticity_test: window too small");
    for (const auto& [a, c] : f.c) {
        int d = degree(a);
        if (d < lo || d == 0) continue;
        // guaranteed lower bound on v(c): the valuation if nonzero, else the modulus
        long vb = c.is_zero() ? c.known_modulus() : c.valuation();
        Rational rate = Rational(vb) / Rational(d);
        if (v.rate_infinite || rate < v.rate) {
            v.rate_infinite = false;
            v.rate = rate;
        }
    }
    v.consistent = v.rate_infinite || v.rate >= threshold;
    return v;
}

MahlerSeries mahler_coefficients_1d(long p, int D, long precision, const std::function<PadicNumber(long)>& f) {
    MahlerSeries s;
    s.r = 1;
    s.D = D;
    // c_a = (forward difference)^a f (0) = sum_j (-1)^(a-j) binom(a,j) f(j)
    std::vector<PadicNumber> vals;
    for (long j = 0; j <= D; ++j) vals.push_back(f(j));
    for (int a = 0; a <= D; ++a) {
        std::optional<PadicNumber> acc;
        for (long j = 0; j <= a; ++j) {
            Integer bc;
            mpz_bin_uiui(bc.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(j));
            Rational coef = Rational(bc) * Rational((a - j) % 2 == 0 ? 1 : -1);
            PadicNumber term = PadicNumber::from_rational(p, coef, precision) * vals[j];
            acc = acc ? (*acc + term) : term;
        }
        s.c.insert_or_assign(MultiIndex{a}, *acc);
    }
    return s;
}

DerivativeRoutes derivative_at_identity(const GroupAlgebraContext& ctx, const MahlerSeries& f, int i) {
    if (f.r != ctx.r || f.D != ctx.D) throw DomainError("derivative_at_identity: shape mismatch");
    DerivativeRoutes out{PadicNumber::zero(ctx.p, ctx.m), PadicNumber::zero(ctx.p, ctx.m), false};
    // route A: pair with the partial_i distribution
    out.route_a = pair_distribution(ctx.p, ctx.m, distribution_of(partial_element(ctx, i)), f);
    // route B: expand every binomial into the monomial basis and read the
    // coefficient of lambda_i
    std::optional<PadicNumber> acc;
    std::vector<int> want(ctx.r, 0);
    want[i - 1] = 1;
    for (const auto& [alpha, c] : f.c) {
        Polynomial poly = Polynomial::constant(ctx.r, rat(1));
        for (int j = 0; j < ctx.r; ++j)
            if (alpha[j] > 0) poly = poly.mul(Polynomial::binomial_in_variable(ctx.r, j, alpha[j]));
        Rational coef = poly.coefficient(want);
        if (reglab::is_zero(coef)) continue;
        long guard = 1;
        for (int j = 0; j < ctx.r; ++j) guard += legendre_valuation(alpha[j], ctx.p);
        PadicNumber term = c * PadicNumber::from_rational(ctx.p, coef, ctx.m + guard);
        acc = acc ? (*acc + term) : term;
    }
    if (acc) out.route_b = *acc;
    out.agree = (out.route_a == out.route_b);
    return out;
}

}  // namespace reglab
