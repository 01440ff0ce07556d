#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dense_oracle.hpp"
#include "reglab/complex.hpp"
#include "reglab/errors.hpp"
#include "reglab/rng.hpp"

using namespace reglab;

TEST_CASE("sparse matrix basics") {
    SparseMatrix a(2, 3);
    a.set(0, 0, rat(1));
    a.set(0, 2, rat(-2));
    a.set(1, 1, rat(1, 2));
    CHECK(a.nonzeros() == 3);
    a.add(0, 2, rat(2));
    CHECK(a.nonzeros() == 2);  // stored zeros are dropped
    SparseMatrix at = a.transpose();
    CHECK(at.get(2, 0) == rat(0));
    CHECK(at.get(1, 1) == rat(1, 2));
    Vec x{rat(1), rat(2), rat(3)};
    Vec y = a.apply(x);
    CHECK(y[0] == rat(1));
    CHECK(y[1] == rat(1));
}

TEST_CASE("rank and solve agree with the dense oracle") {
    Rng rng(3);
    for (int t = 0; t < 60; ++t) {
        int rows = static_cast<int>(rng.uniform(1, 7));
        int cols = static_cast<int>(rng.uniform(1, 7));
        SparseMatrix a = rng.matrix(rows, cols);
        CHECK(rank(a) == testing::dense_rank(testing::densify(a)));

        Vec b = rng.vector(rows);
        auto s1 = solve(a, b);
        auto s2 = testing::dense_solve(a, b);
        CHECK(s1.has_value() == s2.has_value());
        if (s1) {
            Vec r = a.apply(*s1);
            for (int i = 0; i < rows; ++i) CHECK(r[i] == b[i]);
        }
    }
}

TEST_CASE("kernel basis spans the kernel exactly") {
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        int rows = static_cast<int>(rng.uniform(1, 6));
        int cols = static_cast<int>(rng.uniform(1, 6));
        SparseMatrix a = rng.matrix(rows, cols);
        auto ker = kernel_basis(a);
        CHECK(static_cast<int>(ker.size()) == cols - rank(a));
        for (const auto& v : ker) CHECK(vec_is_zero(a.apply(v)));
    }
}

TEST_CASE("cohomology dims: two-term complexes") {
    // identity differential: both groups die
    {
        SparseMatrix d(1, 1);
        d.set(0, 0, rat(1));
        FiniteComplex cx(0, {1, 1}, {d});
        CHECK(cx.cohomology_dims() == std::vector<int>{0, 0});
    }
    // zero differential: both survive
    {
        SparseMatrix d(1, 1);
        FiniteComplex cx(0, {1, 1}, {d});
        CHECK(cx.cohomology_dims() == std::vector<int>{1, 1});
    }
}

TEST_CASE("d^2 != 0 is rejected at construction") {
    SparseMatrix d0(1, 1), d1(1, 1);
    d0.set(0, 0, rat(1));
    d1.set(0, 0, rat(3));
    CHECK_THROWS_AS(FiniteComplex(0, {1, 1, 1}, {d0, d1}), StructureError);
}

TEST_CASE("class_is_zero: trivial cases and cocycle guard") {
    SparseMatrix d0(2, 1), d1(1, 2);
    d0.set(0, 0, rat(1));  // e0 -> f0
    FiniteComplex cx(0, {1, 2, 1}, {d0, d1});
    // zero class
    CHECK(class_is_zero(CohomologyClass(cx, 1, Vec{rat(0), rat(0)}, true)));
    // image of d0 is a coboundary
    CHECK(class_is_zero(CohomologyClass(cx, 1, Vec{rat(1), rat(0)}, true)));
    // the complementary vector is not
    CHECK(!class_is_zero(CohomologyClass(cx, 1, Vec{rat(0), rat(1)}, true)));
    // non-cocycle detection
    SparseMatrix dd1(1, 2);
    dd1.set(0, 1, rat(1));
    FiniteComplex cx2(0, {1, 2, 1}, {d0, dd1});
    CHECK_THROWS_AS(class_is_zero(CohomologyClass(cx2, 1, Vec{rat(0), rat(1)}, false)), StructureError);
}

TEST_CASE("null homotopy: feasible by construction") {
    Rng rng(9);
    // complex: staircase on dims (2, 3, 3, 2)
    std::vector<int> dims{2, 3, 3, 2};
    SparseMatrix d0(3, 2), d1(3, 3), d2(2, 3);
    d0.set(0, 1, rat(1));
    d1.set(2, 0, rat(0));
    d2.set(0, 2, rat(1));
    FiniteComplex C(0, dims, {d0, d1, d2});
    // f = g: the zero homotopy is accepted
    std::vector<SparseMatrix> id;
    for (int k = 0; k <= 3; ++k) id.push_back(SparseMatrix::identity(C.dim(k)));
    ChainMap f{&C, &C, 0, id}, g{&C, &C, 0, id};
    auto h = null_homotopy_solve(f, g, 0, 3);
    REQUIRE(h.has_value());

    // f = g + (d s + s d) for random s is always feasible
    for (int t = 0; t < 10; ++t) {
        std::vector<SparseMatrix> blocks;
        std::vector<SparseMatrix> s;  // s[k]: C^k -> C^{k-1}
        s.push_back(SparseMatrix(0, C.dim(0)));
        for (int k = 1; k <= 3; ++k) s.push_back(rng.matrix(C.dim(k - 1), C.dim(k)));
        for (int k = 0; k <= 3; ++k) {
            SparseMatrix pert(C.dim(k), C.dim(k));
            if (k >= 1) pert = pert + C.diff(k - 1) * s[k];
            if (k < 3) pert = pert + s[k + 1] * C.diff(k);
            blocks.push_back(id[k] + pert);
        }
        ChainMap fg{&C, &C, 0, blocks};
        fg.verify(0, 3);
        auto h2 = null_homotopy_solve(fg, g, 0, 3);
        CHECK(h2.has_value());
    }
}

TEST_CASE("chain-map violation is detected") {
    SparseMatrix d0(1, 1);
    d0.set(0, 0, rat(1));
    FiniteComplex C(0, {1, 1}, {d0});
    SparseMatrix f0(1, 1), f1(1, 1);
    f0.set(0, 0, rat(1));
    f1.set(0, 0, rat(2));
    ChainMap f{&C, &C, 0, {f0, f1}};
    CHECK_THROWS_AS(f.verify(0, 1), StructureError);
}

TEST_CASE("connecting map: solve matches the dense oracle on a split sum") {
    // A = (0 -> Q -> 0), C = (Q -> 0) twisted so that the connecting map is the identity
    // B: degrees 0..1, dims 1,1: d_B(c) = a
    FiniteComplex A(0, {0, 1}, {SparseMatrix(1, 0)});
    FiniteComplex C(0, {1, 0}, {SparseMatrix(0, 1)});
    SparseMatrix dB(1, 1);
    dB.set(0, 0, rat(1));
    FiniteComplex B(0, {1, 1}, {dB});
    ShortExactSequence ses;
    ses.sub = &A;
    ses.total = &B;
    ses.quotient = &C;
    ses.incl = {SparseMatrix(1, 0), SparseMatrix::identity(1)};
    SparseMatrix pr0 = SparseMatrix::identity(1), pr1(0, 1);
    ses.proj = {pr0, pr1};
    ses.sect = {SparseMatrix::identity(1), SparseMatrix(1, 0)};
    ses.validate();
    CohomologyClass c(C, 0, Vec{rat(3)}, true);
    CohomologyClass out = connecting_map(ses, c);
    CHECK(out.degree() == 1);
    CHECK(out.representative() == Vec{rat(3)});
}
