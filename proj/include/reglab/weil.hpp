#pragma once

#include <map>
#include <memory>
#include <vector>

#include "reglab/complex.hpp"
#include "reglab/lie.hpp"

namespace reglab {

/// Monomial of Sym(g^vee) (x) Lambda(g^vee): a multiset of Sym generators
/// (degree 2 each) and a subset of Lambda generators (degree 1 each).
struct WeilMonomial {
    std::vector<int> sym;  // non-decreasing
    std::vector<int> lam;  // strictly increasing

    int sym_degree() const { return static_cast<int>(sym.size()); }
    int total_degree() const { return 2 * sym_degree() + static_cast<int>(lam.size()); }
    auto operator<=>(const WeilMonomial&) const = default;
};

/// Element of the Weil algebra with rational coefficients.
class WeilElement {
  public:
    explicit WeilElement(const LieAlgebraGL& g) : g_(&g) {}

    const LieAlgebraGL& algebra() const { return *g_; }
    const std::map<WeilMonomial, Rational>& coeffs() const { return coeffs_; }
    void add(const WeilMonomial& m, const Rational& v);
    bool is_zero() const { return coeffs_.empty(); }
    bool is_homogeneous(int* degree_out = nullptr) const;

    WeilElement operator+(const WeilElement& o) const;
    WeilElement operator-(const WeilElement& o) const;
    WeilElement operator*(const Rational& s) const;
    bool operator==(const WeilElement& o) const;

  private:
    const LieAlgebraGL* g_;
    std::map<WeilMonomial, Rational> coeffs_;
};

/// The Weil differential: delta(lambda_a) = s_a + d_CE(lambda_a) and
/// delta(s_a) = sum_i theta(X_i)(a) s . lambda_i, extended as a graded
/// derivation (Sym generators even, Lambda generators odd).  Exact, no
/// truncation: the result of a degree-n input is the full degree-(n+1) value.
WeilElement weil_differential(const WeilElement& w);

enum class WeilFilter { Full, AtLeast, LessThan };

/// All Weil monomials of total degree <= D realized as a FiniteComplex,
/// optionally filtered by Sym-degree (W^{>=n} subcomplex / W^{<n} quotient).
/// Degrees 0..D are stored; the differential out of degree D is dropped, so
/// H^D is truncation-unreliable while H^k for k <= D-1 is exact.
class WeilSlice {
  public:
    WeilSlice(const LieAlgebraGL& g, int D, WeilFilter filter = WeilFilter::Full, int n = 0);

    const LieAlgebraGL& algebra() const { return *g_; }
    int degree_bound() const { return D_; }
    WeilFilter filter() const { return filter_; }
    int filter_level() const { return n_; }
    const FiniteComplex& complex() const { return *cx_; }
    const std::vector<WeilMonomial>& basis(int degree) const { return bases_[degree]; }

    Vec coords(const WeilElement& w, int degree) const;  // throws TruncationError past D
    WeilElement element(int degree, const Vec& coords) const;

    /// delta(delta(m)) == 0 for every basis monomial, checked symbolically.
    void verify_differential_squares_to_zero() const;

  private:
    const LieAlgebraGL* g_;
    int D_;
    WeilFilter filter_;
    int n_;
    std::vector<std::vector<WeilMonomial>> bases_;
    std::map<WeilMonomial, int> index_;
    std::unique_ptr<FiniteComplex> cx_;
    bool keeps(const WeilMonomial& m) const;
};

/// W^{>=n} -> W -> W^{<n} with the canonical monomial splitting.
struct WeilFiltrationSequence {
    std::unique_ptr<WeilSlice> sub, total, quotient;
    ShortExactSequence ses;  // pointers into the three slices
};
WeilFiltrationSequence weil_filtration_sequence(const LieAlgebraGL& g, int D, int n);

struct WeilCohomologyTable {
    int D;
    std::vector<int> full;                    // dim H^k(W^{*,.}), k = 0..D
    std::vector<std::vector<int>> filtered;   // filtered[n-1][k] = dim H^k(W^{>=n,.})
    int unreliable_degree;                    // == D
};
WeilCohomologyTable weil_cohomology(const LieAlgebraGL& g, int D);

/// The inverse connecting map: for a cocycle c of total degree 2n in W^{>=n},
/// solve delta(y) = c in W and return the Lambda-part of y as a class in
/// H^{2n-1}(g).  Throws TruncationError/infeasibility via StructureError.
CohomologyClass suspension_sg(const WeilSlice& full_slice, const CEComplex& ce, const WeilElement& c, int n);

struct ChernWeilClass {
    SymPolynomial polynomial;          // combination whose suspension is [p_n]
    std::vector<Rational> coordinates; // in the invariant_polynomials basis
    int solution_space_dim;            // kernel dimension of the suspension solve
};
ChernWeilClass chern_weil_class(const LieAlgebraGL& g, int n, const CEComplex& ce, const WeilSlice& full_slice);

/// Sym^n invariant polynomial placed in bidegree (n, n) of the Weil algebra.
WeilElement sym_as_weil(const SymPolynomial& f);

}  // namespace reglab
