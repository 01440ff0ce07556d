#include "reglab/sparse.hpp"

#include <algorithm>

#include "reglab/errors.hpp"

namespace reglab {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) throw DomainError("SparseMatrix: negative dimension");
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, rat(1));
    return m;
}

void SparseMatrix::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DomainError("SparseMatrix::set: index out of range");
    if (reglab::is_zero(v))
        data_[r].erase(c);
    else
        data_[r][c] = v;
}

void SparseMatrix::add(int r, int c, const Rational& v) {
    if (reglab::is_zero(v)) return;
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DomainError("SparseMatrix::add: index out of range");
    auto it = data_[r].find(c);
    if (it == data_[r].end()) {
        data_[r][c] = v;
    } else {
        it->second += v;
        if (reglab::is_zero(it->second)) data_[r].erase(it);
    }
}

Rational SparseMatrix::get(int r, int c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? rat(0) : it->second;
}

long SparseMatrix::nonzeros() const {
    long n = 0;
    for (const auto& row : data_) n += static_cast<long>(row.size());
    return n;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("SparseMatrix::+: shape mismatch");
    SparseMatrix r = *this;
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : o.data_[i]) r.add(i, c, v);
    return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("SparseMatrix::-: shape mismatch");
    SparseMatrix r = *this;
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : o.data_[i]) r.add(i, c, -v);
    return r;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("SparseMatrix::*: shape mismatch");
    SparseMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [k, a] : data_[i])
            for (const auto& [j, b] : o.data_[k]) r.add(i, j, a * b);
    return r;
}

SparseMatrix SparseMatrix::operator*(const Rational& s) const {
    SparseMatrix r(rows_, cols_);
    if (reglab::is_zero(s)) return r;
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : data_[i]) r.set(i, c, v * s);
    return r;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool SparseMatrix::is_zero() const {
    for (const auto& row : data_)
        if (!row.empty()) return false;
    return true;
}

Vec SparseMatrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw DomainError("SparseMatrix::apply: length mismatch");
    Vec y(rows_, rat(0));
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : data_[i]) y[i] += v * x[c];
    return y;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : data_[i]) r.set(c, i, v);
    return r;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& o) const {
    if (rows_ != o.rows_) throw DomainError("hstack: row mismatch");
    SparseMatrix r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (const auto& [c, v] : data_[i]) r.set(i, c, v);
        for (const auto& [c, v] : o.data_[i]) r.set(i, cols_ + c, v);
    }
    return r;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& o) const {
    if (cols_ != o.cols_) throw DomainError("vstack: col mismatch");
    SparseMatrix r(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : data_[i]) r.set(i, c, v);
    for (int i = 0; i < o.rows_; ++i)
        for (const auto& [c, v] : o.data_[i]) r.set(rows_ + i, c, v);
    return r;
}

namespace {

using Row = std::map<int, Rational>;

// Rescale to coprime integer entries; keeps numbers small without divisions
// inside the elimination loop.
void normalize_content(Row& row, Row& op) {
    if (row.empty()) return;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [c, v] : row) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    Rational f(den_lcm, num_gcd);
    f.canonicalize();
    if (sgn(row.begin()->second) < 0) f = -f;
    if (f == 1) return;
    for (auto& [c, v] : row) v *= f;
    for (auto& [c, v] : op) v *= f;
}

void row_update(Row& target, const Rational& q, const Rational& a, const Row& pivot_row) {
    // target := q*target - a*pivot_row
    if (q != 1)
        for (auto& [c, v] : target) v *= q;
    for (const auto& [c, v] : pivot_row) {
        auto it = target.find(c);
        if (it == target.end()) {
            Rational nv = -a * v;
            if (!reglab::is_zero(nv)) target[c] = nv;
        } else {
            it->second -= a * v;
            if (reglab::is_zero(it->second)) target.erase(it);
        }
    }
}

}  // namespace

Echelon::Echelon(const SparseMatrix& a) : rows_(a.rows()), cols_(a.cols()) {
    std::vector<Row> w(rows_);
    std::vector<Row> op(rows_);
    for (int i = 0; i < rows_; ++i) {
        w[i] = a.row(i);
        op[i][i] = rat(1);
        normalize_content(w[i], op[i]);
    }
    std::vector<bool> used(rows_, false);
    std::vector<int> col_count(cols_, 0);
    for (int i = 0; i < rows_; ++i)
        for (const auto& [c, v] : w[i]) ++col_count[c];

    std::vector<std::pair<int, int>> order;  // (row index, pivot column)
    for (;;) {
        // pivot row: fewest entries among unused nonzero rows
        int best = -1;
        size_t best_sz = 0;
        for (int i = 0; i < rows_; ++i) {
            if (used[i] || w[i].empty()) continue;
            if (best < 0 || w[i].size() < best_sz) {
                best = i;
                best_sz = w[i].size();
            }
        }
        if (best < 0) break;
        // pivot column: least occupied
        int pc = -1, pc_count = 0;
        for (const auto& [c, v] : w[best]) {
            if (pc < 0 || col_count[c] < pc_count) {
                pc = c;
                pc_count = col_count[c];
            }
        }
        used[best] = true;
        const Rational piv = w[best].at(pc);
        for (int i = 0; i < rows_; ++i) {
            if (i == best) continue;
            auto it = w[i].find(pc);
            if (it == w[i].end()) continue;
            for (const auto& [c, v] : w[i]) --col_count[c];
            Rational coeff = it->second;
            row_update(w[i], piv, coeff, w[best]);
            row_update(op[i], piv, coeff, op[best]);
            normalize_content(w[i], op[i]);
            for (const auto& [c, v] : w[i]) ++col_count[c];
        }
        order.emplace_back(best, pc);
    }
    // later pivot steps keep reducing earlier rows, so collect only now
    for (const auto& [i, pc] : order) {
        rr_.push_back(w[i]);
        pivots_.push_back(pc);
        ops_.push_back(op[i]);
    }
    // rows eliminated to zero carry the left null space relations
    for (int i = 0; i < rows_; ++i)
        if (w[i].empty()) {
            rr_.push_back(Row{});
            pivots_.push_back(-1);
            ops_.push_back(op[i]);
        }
}

std::optional<Vec> Echelon::solve(const Vec& b) const {
    if (static_cast<int>(b.size()) != rows_) throw DomainError("Echelon::solve: length mismatch");
    Vec x(cols_, rat(0));
    for (size_t i = 0; i < rr_.size(); ++i) {
        Rational rhs = rat(0);
        for (const auto& [r, v] : ops_[i]) rhs += v * b[r];
        if (pivots_[i] < 0) {
            if (!reglab::is_zero(rhs)) return std::nullopt;  // inconsistent system
            continue;
        }
        // free variables are set to zero, so only the pivot entry contributes
        x[pivots_[i]] = rhs / rr_[i].at(pivots_[i]);
    }
    return x;
}

std::vector<Vec> Echelon::kernel_basis() const {
    std::vector<bool> is_pivot(cols_, false);
    for (int p : pivots_)
        if (p >= 0) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        Vec v(cols_, rat(0));
        v[c] = rat(1);
        for (size_t i = 0; i < rr_.size(); ++i) {
            if (pivots_[i] < 0) continue;
            auto it = rr_[i].find(c);
            if (it != rr_[i].end()) v[pivots_[i]] = -it->second / rr_[i].at(pivots_[i]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> Echelon::row_space_basis() const {
    std::vector<Vec> rows;
    for (size_t i = 0; i < rr_.size(); ++i) {
        if (pivots_[i] < 0) continue;
        Vec v(cols_, rat(0));
        for (const auto& [c, val] : rr_[i]) v[c] = val;
        rows.push_back(std::move(v));
    }
    return rows;
}

int rank(const SparseMatrix& a) { return Echelon(a).rank(); }

std::optional<Vec> solve(const SparseMatrix& a, const Vec& b) { return Echelon(a).solve(b); }

std::vector<Vec> kernel_basis(const SparseMatrix& a) { return Echelon(a).kernel_basis(); }

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DomainError("vec_add: length mismatch");
    Vec r(a.size(), rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DomainError("vec_sub: length mismatch");
    Vec r(a.size(), rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(const Rational& s, const Vec& a) {
    Vec r(a.size(), rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

}  // namespace reglab
