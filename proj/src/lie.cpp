#include "reglab/lie.hpp"

#include <algorithm>
#include <memory>

#include "reglab/errors.hpp"

namespace reglab {

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (k == 0) out = {{}};
    return out;
}

std::vector<std::vector<int>> multisets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) return {{}};
    std::vector<int> cur(k, 0);
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - 1) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[i];
    }
    return out;
}

LieAlgebraGL::LieAlgebraGL(int N) : N_(N) {
    if (N < 1) throw DomainError("LieAlgebraGL: N must be >= 1");
    const int d = dim();
    brackets_.assign(d, std::vector<std::vector<std::pair<int, Rational>>>(d));
    for (int a = 0; a < d; ++a) {
        auto [i, j] = entry(a);
        for (int b = 0; b < d; ++b) {
            auto [k, l] = entry(b);
            std::map<int, Rational> acc;
            if (j == k) acc[index(i, l)] += rat(1);
            if (l == i) acc[index(k, j)] -= rat(1);
            for (const auto& [c, v] : acc)
                if (!reglab::is_zero(v)) brackets_[a][b].emplace_back(c, v);
        }
    }
    // antisymmetry and Jacobi on all basis triples
    auto as_map = [&](int a, int b) {
        std::map<int, Rational> m;
        for (const auto& [c, v] : brackets_[a][b]) m[c] += v;
        return m;
    };
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            auto ab = as_map(a, b), ba = as_map(b, a);
            for (auto& [c, v] : ba) v = -v;
            if (ab != ba) throw StructureError("LieAlgebraGL: bracket not antisymmetric");
        }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                std::map<int, Rational> acc;
                auto addterm = [&](int x, int y, int z, const Rational& s) {
                    for (const auto& [m, v] : brackets_[y][z])
                        for (const auto& [r, w] : brackets_[x][m]) {
                            acc[r] += s * v * w;
                        }
                };
                addterm(a, b, c, rat(1));
                addterm(b, c, a, rat(1));
                addterm(c, a, b, rat(1));
                for (const auto& [r, v] : acc)
                    if (!reglab::is_zero(v)) throw StructureError("LieAlgebraGL: Jacobi identity fails");
            }
}

const std::vector<std::pair<int, Rational>>& LieAlgebraGL::bracket(int a, int b) const { return brackets_[a][b]; }

Rational LieAlgebraGL::trace_of_product(const std::vector<int>& word) const {
    if (word.empty()) return rat(N_);
    int first_i = word[0] / N_;
    int prev_j = word[0] % N_;
    for (size_t t = 1; t < word.size(); ++t) {
        int i = word[t] / N_, j = word[t] % N_;
        if (prev_j != i) return rat(0);
        prev_j = j;
    }
    return prev_j == first_i ? rat(1) : rat(0);
}

ExteriorCochain::ExteriorCochain(const LieAlgebraGL& g, int degree) : g_(&g), k_(degree) {
    // degrees above dim(g) are the zero space: no strictly increasing tuples exist
    if (degree < 0) throw DomainError("ExteriorCochain: negative degree");
}

void ExteriorCochain::set(const std::vector<int>& sorted_tuple, const Rational& v) {
    if (static_cast<int>(sorted_tuple.size()) != k_) throw DomainError("ExteriorCochain::set: arity mismatch");
    if (!std::is_sorted(sorted_tuple.begin(), sorted_tuple.end()) ||
        std::adjacent_find(sorted_tuple.begin(), sorted_tuple.end()) != sorted_tuple.end())
        throw DomainError("ExteriorCochain::set: tuple must be strictly increasing");
    if (reglab::is_zero(v))
        coeffs_.erase(sorted_tuple);
    else
        coeffs_[sorted_tuple] = v;
}

namespace {
// Sort and return the permutation sign; 0 on repeated entries.
int sort_sign(std::vector<int>& t) {
    int sign = 1;
    for (size_t i = 1; i < t.size(); ++i)
        for (size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
            std::swap(t[j], t[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return 0;
    return sign;
}
}  // namespace

void ExteriorCochain::add_signed(std::vector<int> tuple, const Rational& v) {
    if (static_cast<int>(tuple.size()) != k_) throw DomainError("ExteriorCochain::add_signed: arity mismatch");
    int sign = sort_sign(tuple);
    if (sign == 0 || reglab::is_zero(v)) return;
    Rational nv = (sign > 0) ? v : -v;
    auto it = coeffs_.find(tuple);
    if (it == coeffs_.end())
        coeffs_[tuple] = nv;
    else {
        it->second += nv;
        if (reglab::is_zero(it->second)) coeffs_.erase(it);
    }
}

Rational ExteriorCochain::eval(std::vector<int> tuple) const {
    if (static_cast<int>(tuple.size()) != k_) throw DomainError("ExteriorCochain::eval: arity mismatch");
    int sign = sort_sign(tuple);
    if (sign == 0) return rat(0);
    auto it = coeffs_.find(tuple);
    if (it == coeffs_.end()) return rat(0);
    return sign > 0 ? it->second : -it->second;
}

ExteriorCochain ExteriorCochain::operator+(const ExteriorCochain& o) const {
    ExteriorCochain r = *this;
    for (const auto& [t, v] : o.coeffs_) {
        r.coeffs_[t] += v;
        if (reglab::is_zero(r.coeffs_[t])) r.coeffs_.erase(t);
    }
    return r;
}

ExteriorCochain ExteriorCochain::operator-(const ExteriorCochain& o) const { return *this + o * rat(-1); }

ExteriorCochain ExteriorCochain::operator*(const Rational& s) const {
    ExteriorCochain r(*g_, k_);
    if (reglab::is_zero(s)) return r;
    for (const auto& [t, v] : coeffs_) r.coeffs_[t] = v * s;
    return r;
}

bool ExteriorCochain::operator==(const ExteriorCochain& o) const { return k_ == o.k_ && coeffs_ == o.coeffs_; }

ExteriorCochain ce_differential(const ExteriorCochain& c) {
    const LieAlgebraGL& g = c.algebra();
    const int k = c.degree();
    ExteriorCochain out(g, k + 1);
    if (k >= g.dim()) return out;
    for (const auto& tuple : combinations(g.dim(), k + 1)) {
        Rational val = rat(0);
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j) {
                std::vector<int> rest;
                rest.reserve(k);
                for (int t = 0; t <= k; ++t)
                    if (t != i && t != j) rest.push_back(tuple[t]);
                for (const auto& [m, coef] : g.bracket(tuple[i], tuple[j])) {
                    std::vector<int> args;
                    args.reserve(k);
                    args.push_back(m);
                    args.insert(args.end(), rest.begin(), rest.end());
                    Rational term = coef * c.eval(std::move(args));
                    if (((i + j) % 2) != 0) term = -term;
                    val += term;
                }
            }
        if (!reglab::is_zero(val)) out.set(tuple, val);
    }
    return out;
}

CEComplex::CEComplex(const LieAlgebraGL& g) : g_(&g) {
    const int d = g.dim();
    std::vector<int> dims;
    for (int k = 0; k <= d; ++k) {
        bases_.push_back(combinations(d, k));
        dims.push_back(static_cast<int>(bases_[k].size()));
        for (int i = 0; i < dims.back(); ++i) {
            std::vector<int> key = bases_[k][i];
            key.insert(key.begin(), k);
            index_[key] = i;
        }
    }
    std::vector<SparseMatrix> diffs;
    for (int k = 0; k < d; ++k) {
        SparseMatrix m(dims[k + 1], dims[k]);
        for (int col = 0; col < dims[k]; ++col) {
            ExteriorCochain e(g, k);
            e.set(bases_[k][col], rat(1));
            ExteriorCochain de = ce_differential(e);
            for (const auto& [t, v] : de.coeffs()) m.set(basis_index(k + 1, t), col, v);
        }
        diffs.push_back(std::move(m));
    }
    cx_ = std::make_unique<FiniteComplex>(0, dims, diffs);
}

int CEComplex::basis_index(int k, const std::vector<int>& tuple) const {
    std::vector<int> key = tuple;
    key.insert(key.begin(), k);
    auto it = index_.find(key);
    if (it == index_.end()) throw DomainError("CEComplex: unknown basis tuple");
    return it->second;
}

Vec CEComplex::coords(const ExteriorCochain& c) const {
    Vec v(cx_->dim(c.degree()), rat(0));
    for (const auto& [t, x] : c.coeffs()) v[basis_index(c.degree(), t)] = x;
    return v;
}

ExteriorCochain CEComplex::cochain(int k, const Vec& coords) const {
    ExteriorCochain c(*g_, k);
    for (size_t i = 0; i < coords.size(); ++i)
        if (!reglab::is_zero(coords[i])) c.set(bases_[k][i], coords[i]);
    return c;
}

ExteriorCochain primitive_element(const LieAlgebraGL& g, int n) {
    if (n < 1 || n > g.N()) throw DomainError("primitive_element: need 1 <= n <= N");
    const int k = 2 * n - 1;
    const Rational scale = Rational(factorial(n - 1) * factorial(n - 1)) / Rational(factorial(k));
    ExteriorCochain out(g, k);
    std::vector<int> perm(k);
    for (const auto& tuple : combinations(g.dim(), k)) {
        for (int i = 0; i < k; ++i) perm[i] = i;
        Rational val = rat(0);
        int sign = 1;
        // iterate all permutations with sign tracking
        std::vector<int> word(k);
        for (;;) {
            for (int i = 0; i < k; ++i) word[i] = tuple[perm[i]];
            Rational tr = g.trace_of_product(word);
            if (!reglab::is_zero(tr)) val += (sign > 0 ? tr : -tr);
            // next permutation, updating parity by counting the reversal swaps
            int i = k - 2;
            while (i >= 0 && perm[i] >= perm[i + 1]) --i;
            if (i < 0) break;
            int j = k - 1;
            while (perm[j] <= perm[i]) --j;
            std::swap(perm[i], perm[j]);
            sign = -sign;
            int lo = i + 1, hi = k - 1;
            while (lo < hi) {
                std::swap(perm[lo], perm[hi]);
                sign = -sign;
                ++lo;
                --hi;
            }
        }
        if (!reglab::is_zero(val)) out.set(tuple, scale * val);
    }
    return out;
}

SymPolynomial::SymPolynomial(const LieAlgebraGL& g, int degree) : g_(&g), n_(degree) {
    if (degree < 0) throw DomainError("SymPolynomial: negative degree");
}

void SymPolynomial::add(std::vector<int> multiset, const Rational& v) {
    if (static_cast<int>(multiset.size()) != n_) throw DomainError("SymPolynomial::add: arity mismatch");
    if (reglab::is_zero(v)) return;
    std::sort(multiset.begin(), multiset.end());
    auto it = coeffs_.find(multiset);
    if (it == coeffs_.end())
        coeffs_[multiset] = v;
    else {
        it->second += v;
        if (reglab::is_zero(it->second)) coeffs_.erase(it);
    }
}

bool SymPolynomial::operator==(const SymPolynomial& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }

SymPolynomial coadjoint_action(int a, const SymPolynomial& f) {
    const LieAlgebraGL& g = f.algebra();
    SymPolynomial out(g, f.degree());
    // theta(X_a) E_b^vee = sum_c <E_b^vee, [E_c, E_a]> E_c^vee, extended as a derivation
    for (const auto& [ms, v] : f.coeffs()) {
        for (size_t pos = 0; pos < ms.size(); ++pos) {
            int b = ms[pos];
            for (int c = 0; c < g.dim(); ++c) {
                Rational coef = rat(0);
                for (const auto& [m, w] : g.bracket(c, a))
                    if (m == b) coef += w;
                if (reglab::is_zero(coef)) continue;
                std::vector<int> nm = ms;
                nm[pos] = c;
                out.add(std::move(nm), v * coef);
            }
        }
    }
    return out;
}

std::vector<SymPolynomial> invariant_polynomials(const LieAlgebraGL& g, int n) {
    if (n < 1) throw DomainError("invariant_polynomials: n >= 1 required");
    const auto basis = multisets(g.dim(), n);
    std::map<std::vector<int>, int> idx;
    for (size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = static_cast<int>(i);
    const int cols = static_cast<int>(basis.size());
    SparseMatrix A(cols * g.dim(), cols);
    for (int a = 0; a < g.dim(); ++a) {
        for (int col = 0; col < cols; ++col) {
            SymPolynomial f(g, n);
            f.add(basis[col], rat(1));
            SymPolynomial im = coadjoint_action(a, f);
            for (const auto& [ms, v] : im.coeffs()) A.add(a * cols + idx.at(ms), col, v);
        }
    }
    std::vector<SymPolynomial> out;
    for (const Vec& kvec : kernel_basis(A)) {
        SymPolynomial f(g, n);
        for (int i = 0; i < cols; ++i)
            if (!reglab::is_zero(kvec[i])) f.add(basis[i], kvec[i]);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace reglab
