#include "reglab/complex.hpp"

#include <string>

#include "reglab/errors.hpp"

namespace reglab {

FiniteComplex::FiniteComplex(int lo, std::vector<int> dims, std::vector<SparseMatrix> diffs)
    : lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
    if (dims_.empty()) throw DomainError("FiniteComplex: empty degree window");
    if (diffs_.size() + 1 != dims_.size()) throw DomainError("FiniteComplex: need one differential per adjacent pair");
    for (size_t i = 0; i < diffs_.size(); ++i) {
        if (diffs_[i].rows() != dims_[i + 1] || diffs_[i].cols() != dims_[i])
            throw DomainError("FiniteComplex: differential shape mismatch at degree " +
                              std::to_string(lo_ + static_cast<int>(i)));
    }
    for (size_t i = 0; i + 1 < diffs_.size(); ++i) {
        if (!(diffs_[i + 1] * diffs_[i]).is_zero())
            throw StructureError("FiniteComplex: d.d != 0 at degree " + std::to_string(lo_ + static_cast<int>(i)));
    }
}

SparseMatrix FiniteComplex::diff(int k) const {
    int i = k - lo_;
    if (i >= 0 && i < static_cast<int>(diffs_.size())) return diffs_[i];
    return SparseMatrix(dim(k + 1), dim(k));
}

int FiniteComplex::cohomology_dim(int k) const {
    if (!has_degree(k)) return 0;
    int rk = rank(diff(k));
    int rkm1 = rank(diff(k - 1));
    return dim(k) - rk - rkm1;
}

std::vector<int> FiniteComplex::cohomology_dims() const {
    std::vector<int> out;
    std::vector<int> ranks;  // rank of d_k for k = lo..hi
    for (int k = lo(); k <= hi(); ++k) ranks.push_back(rank(diff(k)));
    for (int k = lo(); k <= hi(); ++k) {
        int below = (k == lo()) ? 0 : ranks[k - lo() - 1];
        out.push_back(dim(k) - ranks[k - lo()] - below);
    }
    return out;
}

std::vector<Vec> FiniteComplex::cohomology_basis(int k) const {
    if (!has_degree(k)) return {};
    std::vector<Vec> cocycles = kernel_basis(diff(k));
    // quotient by the image of d_{k-1}: keep cocycles that enlarge the span
    SparseMatrix dm1 = diff(k - 1);
    Echelon im(dm1.transpose());  // row space of transpose = image of dm1
    std::vector<Vec> image_rows = im.row_space_basis();
    std::vector<Vec> basis;
    // incremental elimination against image + chosen reps
    std::vector<Vec> span = image_rows;
    auto reduce = [&](Vec v) -> Vec {
        for (const Vec& s : span) {
            int piv = -1;
            for (size_t i = 0; i < s.size(); ++i)
                if (!reglab::is_zero(s[i])) {
                    piv = static_cast<int>(i);
                    break;
                }
            if (piv < 0) continue;
            if (!reglab::is_zero(v[piv])) v = vec_sub(v, vec_scale(v[piv] / s[piv], s));
        }
        return v;
    };
    for (const Vec& z : cocycles) {
        Vec r = reduce(z);
        if (!vec_is_zero(r)) {
            span.push_back(r);
            basis.push_back(z);
        }
    }
    return basis;
}

CohomologyClass::CohomologyClass(const FiniteComplex& cx, int degree, Vec rep, bool certify)
    : cx_(&cx), degree_(degree), rep_(std::move(rep)), certified_(false) {
    if (static_cast<int>(rep_.size()) != cx.dim(degree)) throw DomainError("CohomologyClass: length mismatch");
    if (certify) {
        if (!vec_is_zero(cx.diff(degree).apply(rep_)))
            throw StructureError("CohomologyClass: representative is not a cocycle");
        certified_ = true;
    }
}

bool class_is_zero(const CohomologyClass& c) {
    const FiniteComplex& cx = c.complex();
    if (!c.certified()) {
        if (!vec_is_zero(cx.diff(c.degree()).apply(c.representative())))
            throw StructureError("class_is_zero: representative is not a cocycle");
    }
    return solve(cx.diff(c.degree() - 1), c.representative()).has_value();
}

SparseMatrix ShortExactSequence::at(const std::vector<SparseMatrix>& v, int k) const {
    int i = k - total->lo();
    if (i < 0 || i >= static_cast<int>(v.size())) throw DomainError("ShortExactSequence: degree out of range");
    return v[i];
}

void ShortExactSequence::validate() const {
    if (sub->lo() != total->lo() || quotient->lo() != total->lo() || sub->hi() != total->hi() ||
        quotient->hi() != total->hi())
        throw StructureError("ShortExactSequence: degree windows differ");
    for (int k = total->lo(); k <= total->hi(); ++k) {
        const SparseMatrix i = at(incl, k), p = at(proj, k), s = at(sect, k);
        if (sub->dim(k) + quotient->dim(k) != total->dim(k))
            throw StructureError("ShortExactSequence: dimension count fails exactness");
        if (!(p * i).is_zero()) throw StructureError("ShortExactSequence: proj.incl != 0");
        if (!(p * s == SparseMatrix::identity(quotient->dim(k))))
            throw StructureError("ShortExactSequence: proj.sect != id");
        if (rank(i) != sub->dim(k)) throw StructureError("ShortExactSequence: inclusion not injective");
        if (k < total->hi()) {
            if (!(total->diff(k) * i == at(incl, k + 1) * sub->diff(k)))
                throw StructureError("ShortExactSequence: inclusion is not a chain map");
            if (!(quotient->diff(k) * p == at(proj, k + 1) * total->diff(k)))
                throw StructureError("ShortExactSequence: projection is not a chain map");
        }
    }
}

CohomologyClass connecting_map(const ShortExactSequence& ses, const CohomologyClass& c) {
    return connecting_map_with_preimage(ses, c, ses.at(ses.sect, c.degree()).apply(c.representative()));
}

CohomologyClass connecting_map_with_preimage(const ShortExactSequence& ses, const CohomologyClass& c,
                                             const Vec& preimage) {
    const int k = c.degree();
    if (!c.certified()) throw StructureError("connecting_map: input class not certified");
    if (!(ses.at(ses.proj, k).apply(preimage) == c.representative()))
        throw DomainError("connecting_map: preimage does not project to the class");
    Vec dx = ses.total->diff(k).apply(preimage);
    if (!vec_is_zero(ses.at(ses.proj, k + 1).apply(dx)))
        throw StructureError("connecting_map: d(preimage) does not land in the subcomplex");
    auto a = solve(ses.at(ses.incl, k + 1), dx);
    if (!a) throw StructureError("connecting_map: could not pull back through the inclusion");
    return CohomologyClass(*ses.sub, k + 1, *a, /*certify=*/true);
}

SparseMatrix ChainMap::at(int k) const {
    int i = k - lo;
    if (i >= 0 && i < static_cast<int>(blocks.size())) return blocks[i];
    return SparseMatrix(dst->dim(k), src->dim(k));
}

void ChainMap::verify(int klo, int khi) const {
    for (int k = klo; k < khi; ++k) {
        if (!(dst->diff(k) * at(k) == at(k + 1) * src->diff(k)))
            throw StructureError("ChainMap: fails to commute with d at degree " + std::to_string(k));
    }
}

SparseMatrix Homotopy::at(int k) const {
    int i = k - lo;
    if (i >= 0 && i < static_cast<int>(blocks.size())) return blocks[i];
    return SparseMatrix(0, 0);
}

std::optional<Homotopy> null_homotopy_solve(const ChainMap& f, const ChainMap& g, int klo, int khi) {
    if (f.src != g.src || f.dst != g.dst) throw DomainError("null_homotopy_solve: mismatched maps");
    f.verify(klo, khi);
    g.verify(klo, khi);
    const FiniteComplex& C = *f.src;
    const FiniteComplex& D = *f.dst;

    // unknowns: h_k : C^k -> D^{k-1} for k in (klo, khi]
    std::vector<int> offset;  // flat offset per k
    int nvar = 0;
    for (int k = klo + 1; k <= khi; ++k) {
        offset.push_back(nvar);
        nvar += C.dim(k) * D.dim(k - 1);
    }
    auto var = [&](int k, int r, int c) {  // h_k entry (r, c), r < D.dim(k-1), c < C.dim(k)
        return offset[k - klo - 1] + r * C.dim(k) + c;
    };

    // equations: for interior k: f_k - g_k = d_D^{k-1} h_k + h_{k+1} d_C^k
    int neq = 0;
    for (int k = klo + 1; k < khi; ++k) neq += D.dim(k) * C.dim(k);
    SparseMatrix A(neq, nvar);
    Vec b(neq, rat(0));
    int row0 = 0;
    for (int k = klo + 1; k < khi; ++k) {
        SparseMatrix rhs = f.at(k) - g.at(k);
        SparseMatrix dD = D.diff(k - 1);
        SparseMatrix dC = C.diff(k);
        auto eq = [&](int r, int c) { return row0 + r * C.dim(k) + c; };
        for (int r = 0; r < D.dim(k); ++r)
            for (int c = 0; c < C.dim(k); ++c) b[eq(r, c)] = rhs.get(r, c);
        // (d_D h_k)(r, c) = sum_s dD(r, s) h_k(s, c)
        for (int r = 0; r < dD.rows(); ++r)
            for (const auto& [s, v] : dD.row(r))
                for (int c = 0; c < C.dim(k); ++c) A.add(eq(r, c), var(k, s, c), v);
        // (h_{k+1} d_C)(r, c) = sum_s h_{k+1}(r, s) dC(s, c)
        for (int s = 0; s < dC.rows(); ++s)
            for (const auto& [c, v] : dC.row(s))
                for (int r = 0; r < D.dim(k); ++r) A.add(eq(r, c), var(k + 1, r, s), v);
        row0 += D.dim(k) * C.dim(k);
    }
    auto x = solve(A, b);
    if (!x) return std::nullopt;
    Homotopy h;
    h.lo = klo + 1;
    for (int k = klo + 1; k <= khi; ++k) {
        SparseMatrix hk(D.dim(k - 1), C.dim(k));
        for (int r = 0; r < D.dim(k - 1); ++r)
            for (int c = 0; c < C.dim(k); ++c) hk.set(r, c, (*x)[var(k, r, c)]);
        h.blocks.push_back(std::move(hk));
    }
    // re-verify entry-exactly on the interior
    for (int k = klo + 1; k < khi; ++k) {
        SparseMatrix lhs = f.at(k) - g.at(k);
        SparseMatrix rhs = D.diff(k - 1) * h.at(k) + h.at(k + 1) * C.diff(k);
        if (!(lhs == rhs)) throw StructureError("null_homotopy_solve: solver produced an invalid homotopy");
    }
    return h;
}

}  // namespace reglab
