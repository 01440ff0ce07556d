#pragma once

#include <map>
#include <optional>
#include <vector>

#include "reglab/rational.hpp"

namespace reglab {

using Vec = std::vector<Rational>;

/// Sparse matrix over the exact rationals.  Zero entries are never stored.
class SparseMatrix {
  public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols);

    static SparseMatrix identity(int n);
    static SparseMatrix zero(int rows, int cols) { return SparseMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int r, int c, const Rational& v);
    void add(int r, int c, const Rational& v);
    Rational get(int r, int c) const;

    const std::map<int, Rational>& row(int r) const { return data_[r]; }
    long nonzeros() const;

    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator*(const Rational& s) const;
    bool operator==(const SparseMatrix& o) const;
    bool is_zero() const;

    Vec apply(const Vec& x) const;
    SparseMatrix transpose() const;
    SparseMatrix hstack(const SparseMatrix& o) const;
    SparseMatrix vstack(const SparseMatrix& o) const;

  private:
    int rows_, cols_;
    std::vector<std::map<int, Rational>> data_;
};

/// Exact elimination over Q.  Rows are rescaled to coprime integer content
/// before and after every pivot step (division-minimizing), and pivots are
/// chosen to favour sparsity.
class Echelon {
  public:
    explicit Echelon(const SparseMatrix& a);

    int rank() const {
        int r = 0;
        for (int p : pivots_)
            if (p >= 0) ++r;
        return r;
    }

    /// One solution of A x = b, if any.
    std::optional<Vec> solve(const Vec& b) const;
    bool in_image(const Vec& b) const { return solve(b).has_value(); }

    /// Basis of ker A.
    std::vector<Vec> kernel_basis() const;

    /// Echelonized nonzero rows of the row space.
    std::vector<Vec> row_space_basis() const;

  private:
    int rows_, cols_;
    // reduced rows, each normalized so the pivot entry is positive integer content-free
    std::vector<std::map<int, Rational>> rr_;
    std::vector<int> pivots_;            // pivot column of rr_[i]
    std::vector<std::map<int, Rational>> ops_;  // row i of the transform: rr = ops * A
};

int rank(const SparseMatrix& a);
std::optional<Vec> solve(const SparseMatrix& a, const Vec& b);
std::vector<Vec> kernel_basis(const SparseMatrix& a);

inline bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!reglab::is_zero(x)) return false;
    return true;
}

Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& s, const Vec& a);

}  // namespace reglab
