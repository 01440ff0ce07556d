#include "reglab/weil.hpp"

#include <algorithm>

#include "reglab/errors.hpp"

namespace reglab {

void WeilElement::add(const WeilMonomial& m, const Rational& v) {
    if (reglab::is_zero(v)) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end())
        coeffs_[m] = v;
    else {
        it->second += v;
        if (reglab::is_zero(it->second)) coeffs_.erase(it);
    }
}

bool WeilElement::is_homogeneous(int* degree_out) const {
    if (coeffs_.empty()) return true;
    int d = coeffs_.begin()->first.total_degree();
    for (const auto& [m, v] : coeffs_)
        if (m.total_degree() != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

WeilElement WeilElement::operator+(const WeilElement& o) const {
    WeilElement r = *this;
    for (const auto& [m, v] : o.coeffs_) r.add(m, v);
    return r;
}

WeilElement WeilElement::operator-(const WeilElement& o) const {
    WeilElement r = *this;
    for (const auto& [m, v] : o.coeffs_) r.add(m, -v);
    return r;
}

WeilElement WeilElement::operator*(const Rational& s) const {
    WeilElement r(*g_);
    if (reglab::is_zero(s)) return r;
    for (const auto& [m, v] : coeffs_) r.coeffs_[m] = v * s;
    return r;
}

bool WeilElement::operator==(const WeilElement& o) const { return coeffs_ == o.coeffs_; }

namespace {

// insert one Lambda generator on the left of the sorted wedge word
// returns sign, or 0 when the generator already occurs
int lam_insert(std::vector<int>& lam, int i) {
    int t = 0;
    for (int b : lam) {
        if (b == i) return 0;
        if (b < i) ++t;
    }
    lam.push_back(i);
    std::sort(lam.begin(), lam.end());
    return (t % 2 == 0) ? 1 : -1;
}

int word_sort_sign(std::vector<int>& w) {
    int sign = 1;
    for (size_t i = 1; i < w.size(); ++i)
        for (size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
            std::swap(w[j], w[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1]) return 0;
    return sign;
}

}  // namespace

WeilElement weil_differential(const WeilElement& w) {
    const LieAlgebraGL& g = w.algebra();
    WeilElement out(g);
    for (const auto& [mon, coeff] : w.coeffs()) {
        // delta on a Sym factor: s_a -> sum_{c,i} <E_a, [E_c, E_i]> s_c lambda_i
        for (size_t r = 0; r < mon.sym.size(); ++r) {
            const int a = mon.sym[r];
            for (int c = 0; c < g.dim(); ++c)
                for (int i = 0; i < g.dim(); ++i) {
                    Rational f = rat(0);
                    for (const auto& [m, v] : g.bracket(c, i))
                        if (m == a) f += v;
                    if (reglab::is_zero(f)) continue;
                    WeilMonomial nm = mon;
                    nm.sym.erase(nm.sym.begin() + static_cast<long>(r));
                    nm.sym.push_back(c);
                    std::sort(nm.sym.begin(), nm.sym.end());
                    int sgn_ins = lam_insert(nm.lam, i);
                    if (sgn_ins == 0) continue;
                    out.add(nm, coeff * f * rat(sgn_ins));
                }
        }
        // delta on a Lambda factor at position j (crossing j odd generators)
        for (size_t j = 0; j < mon.lam.size(); ++j) {
            const int b = mon.lam[j];
            const int eps = (j % 2 == 0) ? 1 : -1;
            // s_b summand
            {
                WeilMonomial nm = mon;
                nm.lam.erase(nm.lam.begin() + static_cast<long>(j));
                nm.sym.push_back(b);
                std::sort(nm.sym.begin(), nm.sym.end());
                out.add(nm, coeff * rat(eps));
            }
            // d_CE summand: (d lambda_b)(E_u, E_v) = -<E_b, [E_u, E_v]>
            for (int u = 0; u < g.dim(); ++u)
                for (int v = u + 1; v < g.dim(); ++v) {
                    Rational kk = rat(0);
                    for (const auto& [m, val] : g.bracket(u, v))
                        if (m == b) kk -= val;
                    if (reglab::is_zero(kk)) continue;
                    std::vector<int> word;
                    word.reserve(mon.lam.size() + 1);
                    for (size_t t = 0; t < mon.lam.size(); ++t) {
                        if (t == j) {
                            word.push_back(u);
                            word.push_back(v);
                        } else {
                            word.push_back(mon.lam[t]);
                        }
                    }
                    int sgn = word_sort_sign(word);
                    if (sgn == 0) continue;
                    WeilMonomial nm;
                    nm.sym = mon.sym;
                    nm.lam = std::move(word);
                    out.add(nm, coeff * kk * rat(eps * sgn));
                }
        }
    }
    return out;
}

bool WeilSlice::keeps(const WeilMonomial& m) const {
    switch (filter_) {
        case WeilFilter::Full:
            return true;
        case WeilFilter::AtLeast:
            return m.sym_degree() >= n_;
        case WeilFilter::LessThan:
            return m.sym_degree() < n_;
    }
    return true;
}

WeilSlice::WeilSlice(const LieAlgebraGL& g, int D, WeilFilter filter, int n)
    : g_(&g), D_(D), filter_(filter), n_(n) {
    if (D < 2) throw DomainError("WeilSlice: degree bound must be >= 2");
    const int dim = g.dim();
    bases_.resize(D + 1);
    for (int deg = 0; deg <= D; ++deg) {
        for (int p = 0; 2 * p <= deg; ++p) {
            int j = deg - 2 * p;
            if (j > dim) continue;
            for (const auto& sym : multisets(dim, p))
                for (const auto& lam : combinations(dim, j)) {
                    WeilMonomial m{sym, lam};
                    if (keeps(m)) bases_[deg].push_back(std::move(m));
                }
        }
        for (size_t i = 0; i < bases_[deg].size(); ++i) index_[bases_[deg][i]] = static_cast<int>(i);
    }
    std::vector<int> dims;
    for (int deg = 0; deg <= D; ++deg) dims.push_back(static_cast<int>(bases_[deg].size()));
    std::vector<SparseMatrix> diffs;
    for (int deg = 0; deg < D; ++deg) {
        SparseMatrix mtx(dims[deg + 1], dims[deg]);
        for (int col = 0; col < dims[deg]; ++col) {
            WeilElement e(g);
            e.add(bases_[deg][col], rat(1));
            WeilElement de = weil_differential(e);
            for (const auto& [m, v] : de.coeffs()) {
                if (!keeps(m)) {
                    if (filter_ == WeilFilter::LessThan) continue;  // quotient projection
                    throw StructureError("WeilSlice: differential left the filtered subspace");
                }
                mtx.set(index_.at(m), col, v);
            }
        }
        diffs.push_back(std::move(mtx));
    }
    cx_ = std::make_unique<FiniteComplex>(0, dims, diffs);
}

Vec WeilSlice::coords(const WeilElement& w, int degree) const {
    Vec v(cx_->dim(degree), rat(0));
    for (const auto& [m, x] : w.coeffs()) {
        if (m.total_degree() != degree) throw DomainError("WeilSlice::coords: inhomogeneous element");
        if (m.total_degree() > D_) throw TruncationError("WeilSlice::coords: degree exceeds the slice bound");
        auto it = index_.find(m);
        if (it == index_.end()) throw DomainError("WeilSlice::coords: monomial outside the filtered slice");
        v[it->second] = x;
    }
    return v;
}

WeilElement WeilSlice::element(int degree, const Vec& coords) const {
    WeilElement w(*g_);
    for (size_t i = 0; i < coords.size(); ++i)
        if (!reglab::is_zero(coords[i])) w.add(bases_[degree][i], coords[i]);
    return w;
}

void WeilSlice::verify_differential_squares_to_zero() const {
    for (int deg = 0; deg <= D_; ++deg)
        for (const auto& m : bases_[deg]) {
            WeilElement e(*g_);
            e.add(m, rat(1));
            if (!weil_differential(weil_differential(e)).is_zero())
                throw StructureError("WeilSlice: delta^2 != 0");
        }
}

WeilFiltrationSequence weil_filtration_sequence(const LieAlgebraGL& g, int D, int n) {
    WeilFiltrationSequence out;
    out.sub = std::make_unique<WeilSlice>(g, D, WeilFilter::AtLeast, n);
    out.total = std::make_unique<WeilSlice>(g, D, WeilFilter::Full, 0);
    out.quotient = std::make_unique<WeilSlice>(g, D, WeilFilter::LessThan, n);
    out.ses.sub = &out.sub->complex();
    out.ses.total = &out.total->complex();
    out.ses.quotient = &out.quotient->complex();
    for (int deg = 0; deg <= D; ++deg) {
        const auto& tb = out.total->basis(deg);
        std::map<WeilMonomial, int> tidx;
        for (size_t i = 0; i < tb.size(); ++i) tidx[tb[i]] = static_cast<int>(i);
        SparseMatrix incl(static_cast<int>(tb.size()), static_cast<int>(out.sub->basis(deg).size()));
        for (size_t c = 0; c < out.sub->basis(deg).size(); ++c)
            incl.set(tidx.at(out.sub->basis(deg)[c]), static_cast<int>(c), rat(1));
        SparseMatrix proj(static_cast<int>(out.quotient->basis(deg).size()), static_cast<int>(tb.size()));
        SparseMatrix sect(static_cast<int>(tb.size()), static_cast<int>(out.quotient->basis(deg).size()));
        for (size_t r = 0; r < out.quotient->basis(deg).size(); ++r) {
            int t = tidx.at(out.quotient->basis(deg)[r]);
            proj.set(static_cast<int>(r), t, rat(1));
            sect.set(t, static_cast<int>(r), rat(1));
        }
        out.ses.incl.push_back(std::move(incl));
        out.ses.proj.push_back(std::move(proj));
        out.ses.sect.push_back(std::move(sect));
    }
    out.ses.validate();
    return out;
}

WeilCohomologyTable weil_cohomology(const LieAlgebraGL& g, int D) {
    WeilCohomologyTable t;
    t.D = D;
    t.unreliable_degree = D;
    WeilSlice full(g, D);
    t.full = full.complex().cohomology_dims();
    for (int n = 1; 2 * n <= D; ++n) {
        WeilSlice f(g, D, WeilFilter::AtLeast, n);
        t.filtered.push_back(f.complex().cohomology_dims());
    }
    return t;
}

WeilElement sym_as_weil(const SymPolynomial& f) {
    WeilElement w(f.algebra());
    for (const auto& [ms, v] : f.coeffs()) w.add(WeilMonomial{ms, {}}, v);
    return w;
}

CohomologyClass suspension_sg(const WeilSlice& full_slice, const CEComplex& ce, const WeilElement& c, int n) {
    if (n < 1) throw DomainError("suspension_sg: n >= 1 required");
    int deg = 0;
    if (!c.is_homogeneous(&deg) || c.is_zero()) deg = 2 * n;
    if (deg != 2 * n) throw DomainError("suspension_sg: cocycle must have total degree 2n");
    for (const auto& [m, v] : c.coeffs())
        if (m.sym_degree() < n) throw DomainError("suspension_sg: input not in W^{>=n}");
    if (2 * n > full_slice.degree_bound()) throw TruncationError("suspension_sg: slice bound too small");
    const FiniteComplex& W = full_slice.complex();
    Vec target = full_slice.coords(c, deg);
    if (!vec_is_zero(W.diff(deg).apply(target)))
        throw StructureError("suspension_sg: input is not a cocycle");
    auto y = solve(W.diff(deg - 1), target);
    if (!y) throw StructureError("suspension_sg: infeasible lift (slice bound too small or non-cocycle)");
    WeilElement lift = full_slice.element(deg - 1, *y);
    ExteriorCochain x(ce.algebra(), deg - 1);
    for (const auto& [m, v] : lift.coeffs())
        if (m.sym_degree() == 0) x.set(m.lam, v);
    return CohomologyClass(ce.complex(), deg - 1, ce.coords(x), /*certify=*/true);
}

ChernWeilClass chern_weil_class(const LieAlgebraGL& g, int n, const CEComplex& ce, const WeilSlice& full_slice) {
    if (n < 1 || n > g.N()) throw DomainError("chern_weil_class: need 1 <= n <= N");
    std::vector<SymPolynomial> inv = invariant_polynomials(g, n);
    const int k = 2 * n - 1;
    const int dimk = ce.complex().dim(k);
    std::vector<Vec> suspended;
    for (const auto& P : inv) {
        CohomologyClass cls = suspension_sg(full_slice, ce, sym_as_weil(P), n);
        suspended.push_back(cls.representative());
    }
    Vec pn = ce.coords(primitive_element(g, n));
    // solve sum_j a_j s(P_j) + d(t) = p_n
    const SparseMatrix dprev = ce.complex().diff(k - 1);
    SparseMatrix A(dimk, static_cast<int>(inv.size()) + dprev.cols());
    for (size_t j = 0; j < suspended.size(); ++j)
        for (int r = 0; r < dimk; ++r) A.add(r, static_cast<int>(j), suspended[j][r]);
    for (int r = 0; r < dprev.rows(); ++r)
        for (const auto& [c, v] : dprev.row(r)) A.add(r, static_cast<int>(inv.size()) + c, v);
    Echelon ech(A);
    auto sol = ech.solve(pn);
    if (!sol) throw StructureError("chern_weil_class: no invariant combination suspends to [p_n]");
    ChernWeilClass out{SymPolynomial(g, n), {}, 0};
    for (size_t j = 0; j < inv.size(); ++j) {
        out.coordinates.push_back((*sol)[j]);
        for (const auto& [ms, v] : inv[j].coeffs()) out.polynomial.add(ms, v * (*sol)[j]);
    }
    // dimension of the ambiguity: kernel restricted to the invariant coordinates
    int kd = 0;
    for (const Vec& kv : ech.kernel_basis()) {
        bool touches = false;
        for (size_t j = 0; j < inv.size(); ++j)
            if (!reglab::is_zero(kv[j])) touches = true;
        if (touches) ++kd;
    }
    out.solution_space_dim = kd;
    return out;
}

}  // namespace reglab
