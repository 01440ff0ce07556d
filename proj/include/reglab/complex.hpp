#pragma once

#include <optional>
#include <vector>

#include "reglab/sparse.hpp"

namespace reglab {

/// Cochain complex on a contiguous degree window with exact differentials.
/// Construction enforces d_{k+1} . d_k = 0.
class FiniteComplex {
  public:
    /// dims[i] is the dimension in degree lo+i; diffs[i] maps degree lo+i to
    /// lo+i+1 and diffs.size() == dims.size()-1 (the top differential is zero).
    FiniteComplex(int lo, std::vector<int> dims, std::vector<SparseMatrix> diffs);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool has_degree(int k) const { return k >= lo() && k <= hi(); }
    int dim(int k) const { return has_degree(k) ? dims_[k - lo_] : 0; }

    /// d_k : degree k -> k+1 (zero matrix outside the stored window).
    SparseMatrix diff(int k) const;

    std::vector<int> cohomology_dims() const;
    int cohomology_dim(int k) const;

    /// Representatives of a basis of H^k.
    std::vector<Vec> cohomology_basis(int k) const;

  private:
    int lo_;
    std::vector<int> dims_;
    std::vector<SparseMatrix> diffs_;
};

class CohomologyClass {
  public:
    CohomologyClass(const FiniteComplex& cx, int degree, Vec rep, bool certify = true);

    const FiniteComplex& complex() const { return *cx_; }
    int degree() const { return degree_; }
    const Vec& representative() const { return rep_; }
    bool certified() const { return certified_; }

  private:
    const FiniteComplex* cx_;
    int degree_;
    Vec rep_;
    bool certified_;
};

/// True iff the representative is a coboundary.  Throws StructureError when
/// the class is not certified and fails the cocycle check.
bool class_is_zero(const CohomologyClass& c);

/// Degreewise-split short exact sequence 0 -> sub -> total -> quotient -> 0
/// with explicit inclusion, projection and section matrices per degree.
struct ShortExactSequence {
    const FiniteComplex* sub;
    const FiniteComplex* total;
    const FiniteComplex* quotient;
    std::vector<SparseMatrix> incl;  // incl[k - lo]: sub^k -> total^k
    std::vector<SparseMatrix> proj;  // proj[k - lo]: total^k -> quotient^k
    std::vector<SparseMatrix> sect;  // sect[k - lo]: quotient^k -> total^k

    /// Exactness, section compatibility and chain-map checks; throws on failure.
    void validate() const;
    SparseMatrix at(const std::vector<SparseMatrix>& v, int k) const;
};

/// Snake-lemma connecting homomorphism H^k(quotient) -> H^{k+1}(sub).
CohomologyClass connecting_map(const ShortExactSequence& ses, const CohomologyClass& c);
/// Same lift with a caller-chosen preimage x of c (proj(x) = rep(c)).
CohomologyClass connecting_map_with_preimage(const ShortExactSequence& ses, const CohomologyClass& c,
                                             const Vec& preimage);

/// Chain map f: C -> D given degreewise on a window.
struct ChainMap {
    const FiniteComplex* src;
    const FiniteComplex* dst;
    int lo;                            // first represented degree
    std::vector<SparseMatrix> blocks;  // blocks[i]: src^{lo+i} -> dst^{lo+i}

    SparseMatrix at(int k) const;
    /// d . f = f . d on [klo, khi-1]; throws StructureError otherwise.
    void verify(int klo, int khi) const;
};

struct Homotopy {
    int lo;                            // h_k defined for k in [lo, hi]
    std::vector<SparseMatrix> blocks;  // blocks[i]: src^{lo+i} -> dst^{lo+i-1}
    SparseMatrix at(int k) const;
};

/// Solve f - g = h.d + d.h for h on the interior of [klo, khi]; returns
/// nullopt when infeasible.  Inputs must be verified chain maps.
std::optional<Homotopy> null_homotopy_solve(const ChainMap& f, const ChainMap& g, int klo, int khi);

}  // namespace reglab
