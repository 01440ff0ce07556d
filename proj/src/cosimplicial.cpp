#include "reglab/cosimplicial.hpp"

#include <algorithm>
#include <functional>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

CosimplicialModel::CosimplicialModel(const LieAlgebraGL& g, int max_level) : g_(&g), L_(max_level) {
    if (max_level < 1 || max_level > 5) throw DomainError("CosimplicialModel: max_level must be in 1..5");
    std::vector<int> dims;
    for (int n = 0; n <= L_; ++n) dims.push_back(level_dim(n));
    std::vector<SparseMatrix> diffs;
    for (int n = 0; n < L_; ++n) {
        SparseMatrix d(level_dim(n + 1), level_dim(n));
        for (int i = 0; i <= n + 1; ++i) {
            SparseMatrix df = coface(n, i);
            d = (i % 2 == 0) ? d + df : d - df;
        }
        diffs.push_back(std::move(d));
    }
    cx_ = std::make_unique<FiniteComplex>(0, dims, diffs);
}

int CosimplicialModel::level_dim(int n) const {
    return static_cast<int>(ipow(1 + g_->dim(), n));
}

std::vector<int> CosimplicialModel::key_of(int n, int index) const {
    std::vector<int> key(n);
    const int radix = 1 + g_->dim();
    for (int s = n - 1; s >= 0; --s) {
        key[s] = index % radix - 1;
        index /= radix;
    }
    return key;
}

int CosimplicialModel::index_of(const std::vector<int>& key) const {
    const int radix = 1 + g_->dim();
    int idx = 0;
    for (int e : key) idx = idx * radix + (e + 1);
    return idx;
}

SparseMatrix CosimplicialModel::coface(int n, int i) const {
    if (n < 0 || n > L_ + 1 || i < 0 || i > n + 1) throw DomainError("coface: invalid (n, i)");
    const LieAlgebraGL& g = *g_;
    SparseMatrix m(level_dim(n + 1), level_dim(n));
    for (int col = 0; col < level_dim(n); ++col) {
        std::vector<int> key = key_of(n, col);
        auto emit = [&](std::vector<int> nk) { m.add(index_of(nk), col, rat(1)); };
        if (i == 0) {
            std::vector<int> nk = key;
            nk.insert(nk.begin(), -1);
            emit(std::move(nk));
        } else if (i == n + 1) {
            std::vector<int> nk = key;
            nk.push_back(-1);
            emit(std::move(nk));
        } else {
            const int a = key[i - 1];
            if (a < 0) {
                std::vector<int> nk = key;
                nk.insert(nk.begin() + (i - 1), -1);
                emit(std::move(nk));
            } else {
                auto with_pair = [&](int left, int right) {
                    std::vector<int> nk = key;
                    nk[i - 1] = left;
                    nk.insert(nk.begin() + i, right);
                    emit(std::move(nk));
                };
                with_pair(a, -1);
                with_pair(-1, a);
                auto [u, v] = g.entry(a);
                for (int l = 0; l < g.N(); ++l) with_pair(g.index(u, l), g.index(l, v));
            }
        }
    }
    return m;
}

SparseMatrix CosimplicialModel::codegeneracy(int n, int i) const {
    if (n < 1 || n > L_ + 2 || i < 0 || i > n - 1) throw DomainError("codegeneracy: invalid (n, i)");
    SparseMatrix m(level_dim(n - 1), level_dim(n));
    for (int col = 0; col < level_dim(n); ++col) {
        std::vector<int> key = key_of(n, col);
        if (key[i] >= 0) continue;  // the counit kills the linear part
        std::vector<int> nk = key;
        nk.erase(nk.begin() + i);
        m.add(index_of(nk), col, rat(1));
    }
    return m;
}

int CosimplicialModel::verify_cosimplicial_identities() const {
    int checked = 0;
    auto fail = [](const char* what) { throw StructureError(std::string("cosimplicial identity fails: ") + what); };
    for (int n = 0; n <= L_ - 1; ++n)
        for (int j = 0; j <= n + 2; ++j)
            for (int i = 0; i < j; ++i) {
                if (!(coface(n + 1, j) * coface(n, i) == coface(n + 1, i) * coface(n, j - 1))) fail("dd");
                ++checked;
            }
    for (int n = 2; n <= L_ + 1; ++n)
        for (int j = 0; j <= n - 2; ++j)
            for (int i = 0; i <= j; ++i) {
                if (!(codegeneracy(n - 1, j) * codegeneracy(n, i) == codegeneracy(n - 1, i) * codegeneracy(n, j + 1)))
                    fail("ss");
                ++checked;
            }
    for (int n = 0; n <= L_; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                SparseMatrix lhs = codegeneracy(n + 1, j) * coface(n, i);
                if (i == j || i == j + 1) {
                    if (!(lhs == SparseMatrix::identity(level_dim(n)))) fail("sd id");
                } else if (i < j) {
                    if (n < 1) continue;
                    if (!(lhs == coface(n - 1, i) * codegeneracy(n, j - 1))) fail("sd <");
                } else {
                    if (n < 1) continue;
                    if (!(lhs == coface(n - 1, i - 1) * codegeneracy(n, j))) fail("sd >");
                }
                ++checked;
            }
    return checked;
}

namespace {

// Row-space accumulator: tracks a growing span with exact elimination.
class Span {
  public:
    explicit Span(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::map<int, Rational>>& rows() const { return rows_; }

    // reduce v against the span; returns the residue
    std::map<int, Rational> reduce(std::map<int, Rational> v) const {
        for (const auto& row : rows_) {
            int piv = row.begin()->first;
            auto it = v.find(piv);
            if (it == v.end()) continue;
            Rational f = it->second / row.begin()->second;
            for (const auto& [c, val] : row) {
                auto jt = v.find(c);
                if (jt == v.end()) {
                    v[c] = -f * val;
                    if (reglab::is_zero(v[c])) v.erase(c);
                } else {
                    jt->second -= f * val;
                    if (reglab::is_zero(jt->second)) v.erase(jt);
                }
            }
        }
        return v;
    }

    bool add(std::map<int, Rational> v) {  // true if the rank grew
        v = reduce(std::move(v));
        if (v.empty()) return false;
        // back-reduce existing rows against the new pivot
        int piv = v.begin()->first;
        for (auto& row : rows_) {
            auto it = row.find(piv);
            if (it == row.end()) continue;
            Rational f = it->second / v.begin()->second;
            for (const auto& [c, val] : v) {
                auto jt = row.find(c);
                if (jt == row.end()) {
                    row[c] = -f * val;
                    if (reglab::is_zero(row[c])) row.erase(c);
                } else {
                    jt->second -= f * val;
                    if (reglab::is_zero(jt->second)) row.erase(jt);
                }
            }
        }
        rows_.push_back(std::move(v));
        std::sort(rows_.begin(), rows_.end(),
                  [](const auto& a, const auto& b) { return a.begin()->first < b.begin()->first; });
        return true;
    }

    bool contains(std::map<int, Rational> v) const { return reduce(std::move(v)).empty(); }

  private:
    int dim_;
    std::vector<std::map<int, Rational>> rows_;
};

std::map<int, Rational> apply_sparse(const SparseMatrix& m, const std::map<int, Rational>& v) {
    std::map<int, Rational> out;
    SparseMatrix mt = m.transpose();
    for (const auto& [c, val] : v)
        for (const auto& [r, w] : mt.row(c)) {
            out[r] += w * val;
            if (reglab::is_zero(out[r])) out.erase(r);
        }
    return out;
}

}  // namespace

NormalizedComplex normalization(const CosimplicialModel& model) {
    const LieAlgebraGL& g = model.algebra();
    const int L = model.max_level();
    const int k = g.dim();
    NormalizedComplex out;

    // the cosimplicial ideal: J^0 = J^1 = 0; J^2 spanned by v(x)w + w(x)v;
    // upward via cofaces, closed under multiplication by V in constant slots
    std::vector<Span> J;
    J.emplace_back(model.level_dim(0));
    J.emplace_back(model.level_dim(1));
    {
        Span j2(model.level_dim(2));
        for (int v = 0; v < k; ++v)
            for (int w = v; w < k; ++w) {
                std::map<int, Rational> rel;
                rel[model.index_of({v, w})] += rat(1);
                rel[model.index_of({w, v})] += rat(1);
                j2.add(std::move(rel));
            }
        J.push_back(std::move(j2));
    }
    for (int n = 3; n <= L; ++n) {
        Span jn(model.level_dim(n));
        std::vector<std::map<int, Rational>> work;
        for (int i = 0; i <= n; ++i) {
            SparseMatrix df = model.coface(n - 1, i);
            for (const auto& row : J[n - 1].rows()) {
                auto img = apply_sparse(df, row);
                if (jn.add(img)) work.push_back(jn.rows().back());
            }
        }
        // ideal closure: insert a generator into any constant slot
        std::vector<std::map<int, Rational>> queue = work;
        while (!queue.empty()) {
            std::map<int, Rational> x = std::move(queue.back());
            queue.pop_back();
            for (int s = 0; s < n; ++s)
                for (int v = 0; v < k; ++v) {
                    std::map<int, Rational> img;
                    for (const auto& [idx, val] : x) {
                        std::vector<int> key = model.key_of(n, idx);
                        if (key[s] >= 0) continue;  // square-zero in the slot
                        key[s] = v;
                        img[model.index_of(key)] += val;
                    }
                    if (!img.empty() && jn.add(img)) queue.push_back(jn.rows().back());
                }
        }
        J.push_back(std::move(jn));
    }

    // quotient bases: non-pivot coordinates of the ideal span
    std::vector<int> mdims;
    for (int n = 0; n <= L; ++n) {
        const int dim = model.level_dim(n);
        std::vector<bool> is_pivot(dim, false);
        for (const auto& row : J[n].rows()) is_pivot[row.begin()->first] = true;
        std::vector<int> free_cols;
        for (int c = 0; c < dim; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        const int qdim = static_cast<int>(free_cols.size());
        SparseMatrix proj(qdim, dim), sect(dim, qdim);
        for (int q = 0; q < qdim; ++q) sect.set(free_cols[q], q, rat(1));
        for (int c = 0; c < dim; ++c) {
            std::map<int, Rational> e;
            e[c] = rat(1);
            auto red = J[n].reduce(std::move(e));
            for (const auto& [idx, val] : red) {
                auto it = std::lower_bound(free_cols.begin(), free_cols.end(), idx);
                if (it == free_cols.end() || *it != idx)
                    throw StructureError("normalization: reduction left the complement");
                proj.set(static_cast<int>(it - free_cols.begin()), c, val);
            }
        }
        out.ideal_dims.push_back(J[n].rank());
        out.quotient_proj.push_back(std::move(proj));
        out.quotient_sect.push_back(std::move(sect));
        mdims.push_back(qdim);
    }

    // induced differential on the quotient; stability of J is re-checked
    std::vector<SparseMatrix> qdiffs;
    for (int n = 0; n < L; ++n) {
        const SparseMatrix d = model.complex().diff(n);
        for (const auto& row : J[n].rows()) {
            auto img = apply_sparse(d, row);
            if (!J[n + 1].contains(img))
                throw StructureError("normalization: ideal is not stable under the differential");
        }
        qdiffs.push_back(out.quotient_proj[n + 1] * d * out.quotient_sect[n]);
    }
    out.quotient_cx = std::make_unique<FiniteComplex>(0, mdims, qdiffs);

    // normalized subcomplex: intersect the codegeneracy kernels on the quotient
    std::vector<int> nu;
    for (int n = 0; n <= L; ++n) {
        SparseMatrix stacked(0, mdims[n]);
        for (int i = 0; i <= n - 1; ++i) {
            SparseMatrix sq = out.quotient_proj[n - 1 >= 0 ? n - 1 : 0] * model.codegeneracy(n, i) *
                              out.quotient_sect[n];
            stacked = stacked.vstack(sq);
        }
        std::vector<Vec> ker = kernel_basis(stacked);
        SparseMatrix b(mdims[n], static_cast<int>(ker.size()));
        for (size_t c = 0; c < ker.size(); ++c)
            for (int r = 0; r < mdims[n]; ++r) b.set(r, static_cast<int>(c), ker[c][r]);
        nu.push_back(static_cast<int>(ker.size()));
        out.norm_basis.push_back(std::move(b));
    }
    std::vector<SparseMatrix> ndiffs;
    for (int n = 0; n < L; ++n) {
        SparseMatrix rhs = out.quotient_cx->diff(n) * out.norm_basis[n];
        Echelon ech(out.norm_basis[n + 1]);
        SparseMatrix X(nu[n + 1], nu[n]);
        for (int c = 0; c < nu[n]; ++c) {
            Vec col(rhs.rows(), rat(0));
            for (int r = 0; r < rhs.rows(); ++r) col[r] = rhs.get(r, c);
            auto x = ech.solve(col);
            if (!x) throw StructureError("normalization: differential leaves the normalized subcomplex");
            for (int r = 0; r < nu[n + 1]; ++r) X.set(r, c, (*x)[r]);
        }
        ndiffs.push_back(std::move(X));
    }
    out.cx = std::make_unique<FiniteComplex>(0, nu, ndiffs);
    return out;
}

NormalizedIso normalized_iso_to_ce(const CosimplicialModel& model, const NormalizedComplex& norm,
                                   const CEComplex& ce) {
    NormalizedIso out;
    out.intertwines = true;
    const LieAlgebraGL& g = model.algebra();
    const int L = model.max_level();
    for (int n = 0; n <= L; ++n) {
        const int nu = norm.cx->dim(n);
        const int binom = ce.complex().dim(n);
        if (nu != binom)
            throw StructureError("normalized_iso_to_ce: normalization dimension differs from Lambda^n");
        // iota: wedge basis tuple -> class of the alternating tensor
        SparseMatrix iota(nu, binom);
        Echelon nb(norm.norm_basis[n]);
        for (int c = 0; c < binom; ++c) {
            const std::vector<int>& tuple = ce.basis(n)[c];
            // alternating tensor over the tuple
            Vec free_vec(model.level_dim(n), rat(0));
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            int sign = 1;
            for (;;) {
                std::vector<int> key(n);
                for (int i = 0; i < n; ++i) key[i] = tuple[perm[i]];
                free_vec[model.index_of(key)] += rat(sign);
                int i = n - 2;
                while (i >= 0 && perm[i] >= perm[i + 1]) --i;
                if (i < 0) break;
                int j = n - 1;
                while (perm[j] <= perm[i]) --j;
                std::swap(perm[i], perm[j]);
                sign = -sign;
                int lo = i + 1, hi = n - 1;
                while (lo < hi) {
                    std::swap(perm[lo], perm[hi]);
                    sign = -sign;
                    ++lo;
                    --hi;
                }
            }
            Vec q = norm.quotient_proj[n].apply(free_vec);
            auto coords = nb.solve(q);
            if (!coords) throw StructureError("normalized_iso_to_ce: alternating tensor is not normalized");
            for (int r = 0; r < nu; ++r) iota.set(r, c, (*coords)[r]);
        }
        if (rank(iota) != binom) throw StructureError("normalized_iso_to_ce: antisymmetrization map is not bijective");
        // invert the square matrix exactly
        Echelon ie(iota);
        SparseMatrix inv(binom, nu);
        for (int c = 0; c < nu; ++c) {
            Vec e(nu, rat(0));
            e[c] = rat(1);
            auto x = ie.solve(e);
            if (!x) throw StructureError("normalized_iso_to_ce: inversion failed");
            for (int r = 0; r < binom; ++r) inv.set(r, c, (*x)[r]);
        }
        out.lambda_to_norm.push_back(std::move(iota));
        out.norm_to_lambda.push_back(std::move(inv));
    }
    for (int n = 0; n < L; ++n) {
        if (!(norm.cx->diff(n) * out.lambda_to_norm[n] == out.lambda_to_norm[n + 1] * ce.complex().diff(n)))
            out.intertwines = false;
    }
    return out;
}

ExteriorCochain phi_map(const CosimplicialModel& model, int n, const Vec& element) {
    const LieAlgebraGL& g = model.algebra();
    ExteriorCochain out(g, n);
    for (size_t i = 0; i < element.size(); ++i) {
        if (reglab::is_zero(element[i])) continue;
        std::vector<int> key = model.key_of(n, static_cast<int>(i));
        if (std::find(key.begin(), key.end(), -1) != key.end()) continue;  // d(1) = 0
        out.add_signed(key, element[i]);
    }
    return out;
}

SparseMatrix phi_matrix(const CosimplicialModel& model, const CEComplex& ce, int n) {
    SparseMatrix m(ce.complex().dim(n), model.level_dim(n));
    for (int col = 0; col < model.level_dim(n); ++col) {
        std::vector<int> key = model.key_of(n, col);
        if (std::find(key.begin(), key.end(), -1) != key.end()) continue;
        ExteriorCochain c(model.algebra(), n);
        c.add_signed(key, rat(1));
        for (const auto& [t, v] : c.coeffs()) m.add(ce.basis_index(n, t), col, v);
    }
    return m;
}

ExteriorCochain psi_map(const CosimplicialModel& model, int n, const Vec& element) {
    const LieAlgebraGL& g = model.algebra();
    ExteriorCochain out(g, n);
    if (n == 0) throw DomainError("psi_map: level 0 is the identity on constants");
    // per B-slot branches of (id (x) antipode) . coproduct, truncated:
    //   1  ->  (1,1) +1
    //   v  ->  (v,1) +1; (1,v) -1; (b,c) -1 for every second-order pair
    struct Branch {
        int first, second;
        Rational coeff;
    };
    for (size_t idx = 0; idx < element.size(); ++idx) {
        if (reglab::is_zero(element[idx])) continue;
        std::vector<int> key = model.key_of(n, static_cast<int>(idx));
        std::vector<std::vector<Branch>> slot_branches(n + 1);
        for (int slot = 1; slot <= n; ++slot) {
            auto& br = slot_branches[slot];
            int a = key[slot - 1];
            if (a < 0) {
                br.push_back({-1, -1, rat(1)});
            } else {
                br.push_back({a, -1, rat(1)});
                br.push_back({-1, a, rat(-1)});
                auto [u, v] = g.entry(a);
                for (int l = 0; l < g.N(); ++l) br.push_back({g.index(u, l), g.index(l, v), rat(-1)});
            }
        }
        std::vector<int> choice(n + 1, 0);
        std::function<void(int, Rational)> walk = [&](int slot, Rational coeff) {
            if (slot > n) {
                std::vector<int> e(n + 1, -1);
                bool dead = false;
                auto mul = [&](int x, int y) {
                    if (x >= 0 && y >= 0) {
                        dead = true;
                        return -1;
                    }
                    return x >= 0 ? x : y;
                };
                e[0] = slot_branches[1][choice[1]].first;
                for (int j = 1; j < n; ++j)
                    e[j] = mul(slot_branches[j][choice[j]].second, slot_branches[j + 1][choice[j + 1]].first);
                e[n] = slot_branches[n][choice[n]].second;
                if (dead) return;
                if (e[0] >= 0) return;  // counit kills the linear part of slot 0
                std::vector<int> word;
                for (int j = 1; j <= n; ++j) {
                    if (e[j] < 0) return;
                    word.push_back(e[j]);
                }
                out.add_signed(std::move(word), coeff);
                return;
            }
            for (size_t b = 0; b < slot_branches[slot].size(); ++b) {
                choice[slot] = static_cast<int>(b);
                walk(slot + 1, coeff * slot_branches[slot][b].coeff);
            }
        };
        walk(1, element[idx]);
    }
    return out;
}

SparseMatrix psi_matrix(const CosimplicialModel& model, const CEComplex& ce, int n) {
    if (n == 0) return SparseMatrix::identity(1);
    SparseMatrix m(ce.complex().dim(n), model.level_dim(n));
    for (int col = 0; col < model.level_dim(n); ++col) {
        Vec e(model.level_dim(n), rat(0));
        e[col] = rat(1);
        ExteriorCochain c = psi_map(model, n, e);
        for (const auto& [t, v] : c.coeffs()) m.set(ce.basis_index(n, t), col, v);
    }
    return m;
}

std::optional<Vec> class_coordinates(const FiniteComplex& cx, int k, const std::vector<Vec>& h_basis,
                                     const Vec& cocycle) {
    const SparseMatrix dprev = cx.diff(k - 1);
    const int nb = static_cast<int>(h_basis.size());
    SparseMatrix A(cx.dim(k), nb + dprev.cols());
    for (int j = 0; j < nb; ++j)
        for (int r = 0; r < cx.dim(k); ++r) A.add(r, j, h_basis[j][r]);
    for (int r = 0; r < dprev.rows(); ++r)
        for (const auto& [c, v] : dprev.row(r)) A.add(r, nb + c, v);
    auto sol = solve(A, cocycle);
    if (!sol) return std::nullopt;
    Vec coords(sol->begin(), sol->begin() + nb);
    return coords;
}

PhiPsiReport compare_phi_psi(const LieAlgebraGL& g, int max_level) {
    if (max_level < 3) throw DomainError("compare_phi_psi: max_level >= 3 required");
    PhiPsiReport rep;
    rep.N = g.N();
    rep.max_level = max_level;
    CosimplicialModel model(g, max_level);
    CEComplex ce(g);
    const FiniteComplex& M = model.complex();

    std::vector<SparseMatrix> phi, psi;
    for (int n = 0; n <= max_level; ++n) {
        phi.push_back(phi_matrix(model, ce, n));
        psi.push_back(psi_matrix(model, ce, n));
    }
    rep.phi_chain_map = true;
    for (int n = 0; n < max_level; ++n)
        if (!(ce.complex().diff(n) * phi[n] == phi[n + 1] * M.diff(n))) rep.phi_chain_map = false;

    // literal Psi: per-step defect sign c_n with Psi d = c_n d Psi
    rep.psi_literal_chain_map = true;
    std::vector<int> defect;
    for (int n = 0; n < max_level; ++n) {
        SparseMatrix lhs = psi[n + 1] * M.diff(n);
        SparseMatrix rhs = ce.complex().diff(n) * psi[n];
        if (lhs == rhs) {
            defect.push_back(1);
        } else if (lhs == rhs * rat(-1)) {
            defect.push_back(-1);
            rep.psi_literal_chain_map = false;
        } else {
            defect.push_back(0);
            rep.psi_literal_chain_map = false;
        }
    }
    rep.psi_chain_defect = defect;
    std::vector<int> eps(max_level + 1, 1);
    bool correctable = true;
    for (int n = 0; n < max_level; ++n) {
        if (defect[n] == 0) {
            bool lhs_zero = (psi[n + 1] * M.diff(n)).is_zero();
            bool rhs_zero = (ce.complex().diff(n) * psi[n]).is_zero();
            if (lhs_zero && rhs_zero)
                eps[n + 1] = eps[n];
            else
                correctable = false;
        } else {
            eps[n + 1] = eps[n] * defect[n];
        }
    }
    rep.psi_sign_correction = eps;
    std::vector<SparseMatrix> psihat;
    for (int n = 0; n <= max_level; ++n) psihat.push_back(eps[n] == 1 ? psi[n] : psi[n] * rat(-1));
    rep.psi_corrected_chain_map = correctable;
    for (int n = 0; n < max_level && correctable; ++n)
        if (!(ce.complex().diff(n) * psihat[n] == psihat[n + 1] * M.diff(n))) rep.psi_corrected_chain_map = false;

    for (int k = 0; k < max_level; ++k) {
        std::vector<Vec> mh = M.cohomology_basis(k);
        std::vector<Vec> ceh = ce.complex().cohomology_basis(k);
        auto scalar_between = [&](const std::vector<SparseMatrix>& a,
                                  const std::vector<SparseMatrix>& b) -> std::optional<Rational> {
            std::optional<Rational> s;
            for (const Vec& x : mh) {
                auto ca = class_coordinates(ce.complex(), k, ceh, a[k].apply(x));
                auto cb = class_coordinates(ce.complex(), k, ceh, b[k].apply(x));
                if (!ca || !cb) return std::nullopt;
                for (size_t i = 0; i < ca->size(); ++i) {
                    if (reglab::is_zero((*cb)[i])) {
                        if (!reglab::is_zero((*ca)[i])) return std::nullopt;
                        continue;
                    }
                    Rational cand = (*ca)[i] / (*cb)[i];
                    if (!s)
                        s = cand;
                    else if (*s != cand)
                        return std::nullopt;
                }
            }
            return s;
        };
        rep.literal_scalar.push_back(scalar_between(phi, psi));
        rep.corrected_scalar.push_back(scalar_between(phi, psihat));
    }

    Rational s = rat(1);
    for (const auto& sc : rep.corrected_scalar)
        if (sc && !reglab::is_zero(*sc)) s = *sc;
    rep.homotopy_sign = s;
    ChainMap f{&M, &ce.complex(), 0, phi};
    std::vector<SparseMatrix> gblocks;
    for (int n = 0; n <= max_level; ++n) gblocks.push_back(psihat[n] * s);
    ChainMap gm{&M, &ce.complex(), 0, gblocks};
    if (rep.psi_corrected_chain_map) {
        auto h = null_homotopy_solve(f, gm, 0, max_level);
        rep.homotopy_feasible = h.has_value();
    }
    return rep;
}

}  // namespace reglab
