#pragma once

#include <random>

#include "reglab/sparse.hpp"

namespace reglab {

/// Deterministic randomness for property tests; mt19937_64 output is
/// portable, so a seeded run is byte-reproducible.
class Rng {
  public:
    explicit Rng(unsigned long seed) : eng_(seed) {}

    long uniform(long lo, long hi) {  // inclusive
        std::uniform_int_distribution<long> d(lo, hi);
        return d(eng_);
    }

    Rational small_rational(long span = 3) {
        long num = uniform(-span, span);
        long den = uniform(1, span);
        return rat(num, den);
    }

    Vec vector(int n, long span = 3) {
        Vec v(n, rat(0));
        for (int i = 0; i < n; ++i) v[i] = small_rational(span);
        return v;
    }

    SparseMatrix matrix(int rows, int cols, long span = 2) {
        SparseMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                long x = uniform(-span, span);
                if (x != 0) m.set(r, c, rat(x));
            }
        return m;
    }

    /// Random integer matrix with determinant +-1 built from elementary row
    /// operations; the inverse is tracked exactly.
    std::pair<SparseMatrix, SparseMatrix> invertible(int n, int ops = -1) {
        SparseMatrix a = SparseMatrix::identity(n);
        SparseMatrix ainv = SparseMatrix::identity(n);
        if (ops < 0) ops = 2 * n + 2;
        for (int t = 0; t < ops && n > 1; ++t) {
            int i = static_cast<int>(uniform(0, n - 1));
            int j = static_cast<int>(uniform(0, n - 1));
            if (i == j) continue;
            Rational c = rat(uniform(-2, 2));
            if (reglab::is_zero(c)) continue;
            // row_i += c * row_j on a;  inverse gets the opposite column op
            for (int k = 0; k < n; ++k) {
                a.add(i, k, c * a.get(j, k));
                ainv.add(k, j, -c * ainv.get(k, i));
            }
        }
        return {a, ainv};
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
};

}  // namespace reglab
