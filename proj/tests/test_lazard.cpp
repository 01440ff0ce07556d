#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reglab/errors.hpp"
#include "reglab/group_algebra.hpp"
#include "reglab/rng.hpp"

using namespace reglab;

TEST_CASE("context validation") {
    CHECK_THROWS_AS(GroupAlgebraContext(2, 1, 6, 4), DomainError);   // p = 2 excluded
    CHECK_THROWS_AS(GroupAlgebraContext(9, 1, 6, 4), DomainError);   // not prime
    CHECK_THROWS_AS(GroupAlgebraContext(5, 1, 6, 4, {rat(1, 5)}), DomainError);  // weight too small
    CHECK_NOTHROW(GroupAlgebraContext(5, 2, 8, 6));
}

TEST_CASE("valuation w: definition cases") {
    GroupAlgebraContext ctx(5, 2, 6, 6);
    GroupAlgebraElement x(ctx);
    CHECK(valuation_w(x).infinite);  // w(0) = +infinity

    // w(p z_1) = 1 + omega_1
    x.set({1, 0}, PadicNumber::from_integer(5, 5, 6));
    ExtendedValuation w = valuation_w(x);
    CHECK(!w.infinite);
    CHECK(w.value == rat(2));

    // w(z_1 + p^2 z_2) = min(omega_1, 2 + omega_2) = 1
    GroupAlgebraElement y(ctx);
    y.set({1, 0}, PadicNumber::from_integer(5, 1, 6));
    y.set({0, 1}, PadicNumber::from_integer(5, 25, 6));
    CHECK(valuation_w(y).value == rat(1));

    // weighted variant
    GroupAlgebraContext ctxw(5, 2, 6, 6, {rat(1), rat(3, 2)});
    GroupAlgebraElement z(ctxw);
    z.set({0, 1}, PadicNumber::from_integer(5, 1, 6));
    CHECK(valuation_w(z).value == rat(3, 2));
}

TEST_CASE("saturation membership") {
    GroupAlgebraContext ctx(5, 1, 8, 6);
    // e_alpha = z^a / a! for all a <= D (Legendre bound v(a!) <= a/(p-1))
    for (int a = 0; a <= 8; ++a) {
        CHECK(saturation_member(saturation_generator(ctx, {a})));
        CHECK(legendre_valuation(a, 5) * 4 <= a);  // the bound itself, exactly
    }
    // p^{-1} z_1 is on the edge, p^{-2} z_1 is out
    GroupAlgebraElement x(ctx);
    x.set({1}, PadicNumber::from_rational(5, rat(1, 5), 6));
    CHECK(saturation_member(x));
    GroupAlgebraElement y(ctx);
    y.set({1}, PadicNumber::from_rational(5, rat(1, 25), 6));
    CHECK(!saturation_member(y));
}

TEST_CASE("partial element: series coefficients and saturation") {
    GroupAlgebraContext ctx(5, 1, 8, 6);
    GroupAlgebraElement d = partial_element(ctx, 1);
    CHECK(d.get({1}) == PadicNumber::from_integer(5, 1, 6));
    CHECK(d.get({2}) == PadicNumber::from_rational(5, rat(-1, 2), 6));
    CHECK(d.get({3}) == PadicNumber::from_rational(5, rat(1, 3), 6));
    CHECK(saturation_member(d));
    // D = 1 degenerates to z_1
    GroupAlgebraContext ctx1(5, 1, 1, 6);
    GroupAlgebraElement d1 = partial_element(ctx1, 1);
    CHECK(d1.coeffs().size() == 1);
    CHECK(d1.get({1}) == PadicNumber::from_integer(5, 1, 6));
}

TEST_CASE("primitivity: z fails with residual z(x)z, log succeeds, linearity") {
    GroupAlgebraContext ctx(5, 1, 12, 6);
    GroupAlgebraElement z(ctx);
    z.set({1}, PadicNumber::from_integer(5, 1, 6));
    PrimitivityReport rz = primitivity_check(z);
    CHECK(!rz.primitive_at_precision);
    int nonzero = 0;
    for (const auto& [key, v] : rz.residual.coeffs()) {
        if (v.is_zero()) continue;
        ++nonzero;
        CHECK(key == std::make_pair(MultiIndex{1}, MultiIndex{1}));
        CHECK(v == PadicNumber::from_integer(5, 1, 6));
    }
    CHECK(nonzero == 1);

    GroupAlgebraElement d = partial_element(ctx, 1);
    PrimitivityReport rd = primitivity_check(d);
    CHECK(rd.primitive_at_precision);

    // linearity of the residual
    GroupAlgebraElement sum = z + d;
    PrimitivityReport rs = primitivity_check(sum);
    GroupAlgebraTensor expect = rz.residual;
    for (const auto& [k, v] : rd.residual.coeffs()) expect.add(k.first, k.second, v);
    GroupAlgebraTensor diff = rs.residual - expect;
    for (const auto& [k, v] : diff.coeffs()) CHECK(v.is_zero());
}

TEST_CASE("primitivity across precisions and ranks") {
    for (long m = 2; m <= 8; m += 3) {
        GroupAlgebraContext ctx(7, 1, 9, m);
        CHECK(primitivity_check(partial_element(ctx, 1)).primitive_at_precision);
    }
    GroupAlgebraContext ctx2(5, 2, 8, 5);
    CHECK(primitivity_check(partial_element(ctx2, 2)).primitive_at_precision);
}

TEST_CASE("amice transform: dirac measures and the derivative") {
    // Dirac at 0 -> 1
    Distribution d0 = dirac(5, 1, 8, 6, {0});
    AmiceSeries s0 = amice_transform(d0);
    CHECK(s0.a.size() == 1);
    CHECK(s0.a.at(MultiIndex{0}) == PadicNumber::from_integer(5, 1, 6));

    // Dirac at k -> (1+T)^k truncated, binomial-theorem oracle
    for (long k = 1; k <= 6; ++k) {
        Distribution dk = dirac(5, 1, 8, 6, {k});
        AmiceSeries sk = amice_transform(dk);
        for (int a = 0; a <= 8; ++a) {
            Integer bc;
            mpz_bin_uiui(bc.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(a));
            PadicNumber expect = PadicNumber::from_rational(5, Rational(bc), 6);
            auto it = sk.a.find(MultiIndex{a});
            PadicNumber got = (it == sk.a.end()) ? PadicNumber::zero(5, 6) : it->second;
            CHECK((got - expect).is_zero());
        }
    }

    // derivative distribution -> log(1+T)
    GroupAlgebraContext ctx(5, 1, 12, 6);
    AmiceSeries sl = amice_transform(distribution_of(partial_element(ctx, 1)));
    for (int a = 1; a <= 12; ++a) {
        Rational expect = Rational(a % 2 == 1 ? 1 : -1) / Rational(a);
        CHECK((sl.a.at(MultiIndex{a}) - PadicNumber::from_rational(5, expect, 6)).is_zero());
    }

    // round trip is the identity on truncations
    Distribution back = amice_inverse(sl);
    CHECK(back.rho.size() == sl.a.size());
    for (const auto& [a, v] : back.rho) CHECK((v - sl.a.at(a)).is_zero());
}

TEST_CASE("pairing: dirac evaluation and the derivative moments") {
    GroupAlgebraContext ctx(5, 1, 10, 6);
    MahlerSeries f;
    f.r = 1;
    f.D = 10;
    f.c.insert_or_assign(MultiIndex{0}, PadicNumber::from_integer(5, 7, 6));
    f.c.insert_or_assign(MultiIndex{1}, PadicNumber::from_integer(5, 3, 6));
    f.c.insert_or_assign(MultiIndex{2}, PadicNumber::from_integer(5, 1, 6));
    // Dirac at 0 picks c_0
    PadicNumber v0 = pair_distribution(5, 6, dirac(5, 1, 10, 6, {0}), f);
    CHECK(v0 == PadicNumber::from_integer(5, 7, 6));
    // partial paired with binom(lambda, 1) -> 1, with binom(lambda, 2) -> -1/2
    Distribution dd = distribution_of(partial_element(ctx, 1));
    MahlerSeries b1;
    b1.r = 1;
    b1.D = 10;
    b1.c.insert_or_assign(MultiIndex{1}, PadicNumber::from_integer(5, 1, 6));
    CHECK(pair_distribution(5, 6, dd, b1) == PadicNumber::from_integer(5, 1, 6));
    MahlerSeries b2;
    b2.r = 1;
    b2.D = 10;
    b2.c.insert_or_assign(MultiIndex{2}, PadicNumber::from_integer(5, 1, 6));
    CHECK(pair_distribution(5, 6, dd, b2) == PadicNumber::from_rational(5, rat(-1, 2), 6));
}

TEST_CASE("local analyticity heuristics") {
    MahlerSeries growth;
    growth.r = 1;
    growth.D = 10;
    for (int a = 0; a <= 10; ++a)
        growth.c.insert_or_assign(MultiIndex{a}, PadicNumber::from_rational(5, Rational(pow_int(5, a)), 6));
    AnalyticityVerdict v1 = local_analyticity_test(5, growth, rat(1, 4));
    CHECK(v1.consistent);
    CHECK(v1.rate == rat(1));

    MahlerSeries flat;
    flat.r = 1;
    flat.D = 10;
    for (int a = 0; a <= 10; ++a) flat.c.insert_or_assign(MultiIndex{a}, PadicNumber::from_integer(5, 1, 6));
    AnalyticityVerdict v2 = local_analyticity_test(5, flat, rat(1, 4));
    CHECK(!v2.consistent);
    CHECK(v2.rate == rat(0));

    // Mahler coefficients of log_p(1 + p lambda) by finite differences
    const long p = 5;
    MahlerSeries lg = mahler_coefficients_1d(p, 10, 8, [&](long j) {
        return padic_log(PadicNumber::from_integer(p, 1 + p * j, 8));
    });
    AnalyticityVerdict v3 = local_analyticity_test(p, lg, rat(1, 4));
    CHECK(v3.consistent);
}

TEST_CASE("derivative at identity: dual routes") {
    GroupAlgebraContext ctx(5, 1, 10, 6);
    // f = binom(lambda, 1): both routes give 1
    MahlerSeries f1;
    f1.r = 1;
    f1.D = 10;
    f1.c.insert_or_assign(MultiIndex{1}, PadicNumber::from_integer(5, 1, 6));
    DerivativeRoutes r1 = derivative_at_identity(ctx, f1, 1);
    CHECK(r1.agree);
    CHECK(r1.route_a == PadicNumber::from_integer(5, 1, 6));

    // f = binom(lambda, 2): -1/2 both ways
    MahlerSeries f2;
    f2.r = 1;
    f2.D = 10;
    f2.c.insert_or_assign(MultiIndex{2}, PadicNumber::from_integer(5, 1, 6));
    DerivativeRoutes r2 = derivative_at_identity(ctx, f2, 1);
    CHECK(r2.agree);
    CHECK(r2.route_b == PadicNumber::from_rational(5, rat(-1, 2), 6));

    // 50 random truncated series
    Rng rng(47);
    for (int t = 0; t < 50; ++t) {
        MahlerSeries f;
        f.r = 1;
        f.D = 10;
        for (int a = 0; a <= 10; ++a) f.c.insert_or_assign(MultiIndex{a}, PadicNumber::from_rational(5, rat(rng.uniform(-30, 30)), 6));
        CHECK(derivative_at_identity(ctx, f, 1).agree);
    }

    // rank 2: only the i-direction pure indices contribute
    GroupAlgebraContext ctx2(5, 2, 6, 6);
    MahlerSeries g;
    g.r = 2;
    g.D = 6;
    g.c.insert_or_assign(MultiIndex{1, 0}, PadicNumber::from_integer(5, 4, 6));
    g.c.insert_or_assign(MultiIndex{0, 1}, PadicNumber::from_integer(5, 9, 6));
    g.c.insert_or_assign(MultiIndex{1, 1}, PadicNumber::from_integer(5, 11, 6));
    DerivativeRoutes ra = derivative_at_identity(ctx2, g, 1);
    CHECK(ra.agree);
    CHECK(ra.route_a == PadicNumber::from_integer(5, 4, 6));
    DerivativeRoutes rb = derivative_at_identity(ctx2, g, 2);
    CHECK(rb.agree);
    CHECK(rb.route_a == PadicNumber::from_integer(5, 9, 6));
}

TEST_CASE("ordered-basis dependence is only a relabeling (property)") {
    // reordering the coordinates permutes the partial elements accordingly
    GroupAlgebraContext ctx(5, 2, 8, 6);
    GroupAlgebraElement d1 = partial_element(ctx, 1);
    GroupAlgebraElement d2 = partial_element(ctx, 2);
    for (const auto& [a, v] : d1.coeffs()) {
        MultiIndex swapped{a[1], a[0]};
        CHECK((d2.get(swapped) - v).is_zero());
    }
}

TEST_CASE("coproduct is an algebra map modulo truncation") {
    GroupAlgebraContext ctx(5, 1, 8, 6);
    Rng rng(53);
    for (int t = 0; t < 10; ++t) {
        GroupAlgebraElement x(ctx), y(ctx);
        for (int j = 0; j <= 4; ++j) {
            x.set({j}, PadicNumber::from_rational(5, rat(rng.uniform(-9, 9)), 6));
            y.set({j}, PadicNumber::from_rational(5, rat(rng.uniform(-9, 9)), 6));
        }
        GroupAlgebraTensor lhs = coproduct(x * y);
        GroupAlgebraTensor rhs = coproduct(x) * coproduct(y);
        GroupAlgebraTensor diff = lhs - rhs;
        for (const auto& [k, v] : diff.coeffs()) CHECK(v.is_zero());
    }
}
