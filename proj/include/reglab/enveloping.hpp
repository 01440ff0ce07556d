#pragma once

#include <map>
#include <vector>

#include "reglab/group_algebra.hpp"
#include "reglab/lie.hpp"
#include "reglab/sparse.hpp"

namespace reglab {

/// PBW-ordered element of U(gl_N), truncated at a fixed PBW degree.
/// Monomials are exponent vectors over the E_ij basis in index order.
class EnvelopingElement {
  public:
    EnvelopingElement(const LieAlgebraGL& g, int degree_cap) : g_(&g), cap_(degree_cap) {}

    const LieAlgebraGL& algebra() const { return *g_; }
    int degree_cap() const { return cap_; }
    const std::map<std::vector<int>, Rational>& coeffs() const { return coeffs_; }
    void add(const std::vector<int>& monomial, const Rational& v);

    static EnvelopingElement generator(const LieAlgebraGL& g, int cap, int index);
    static EnvelopingElement one(const LieAlgebraGL& g, int cap);

    EnvelopingElement operator+(const EnvelopingElement& o) const;
    EnvelopingElement operator-(const EnvelopingElement& o) const;
    /// PBW product with straightening; throws TruncationError when the input
    /// degrees alone could overflow the cap.
    EnvelopingElement operator*(const EnvelopingElement& o) const;
    bool operator==(const EnvelopingElement& o) const { return coeffs_ == o.coeffs_; }

    Rational augmentation() const;  // kills every positive-degree monomial

  private:
    const LieAlgebraGL* g_;
    int cap_;
    std::map<std::vector<int>, Rational> coeffs_;
};

/// Straighten an arbitrary word of generator indices into the PBW basis.
EnvelopingElement straighten_word(const LieAlgebraGL& g, int cap, const std::vector<int>& word);

/// as_n(X_1 ^ ... ^ X_n) = sum_sigma sgn(sigma) X_{sigma^{-1}(1)} (x) ... ;
/// slots hold U-elements, here single generators.
using EnvelopingTensor = std::map<std::vector<std::vector<int>>, Rational>;
EnvelopingTensor antisymmetrization(const LieAlgebraGL& g, const std::vector<int>& generators);

/// Monomial-level description of an augmented algebra for the two standard
/// complexes: multiplication, augmentation and a degree function.
struct AlgebraOps {
    int rank;  // length of a monomial exponent vector
    std::function<int(const std::vector<int>&)> deg;
    std::function<std::vector<std::pair<std::vector<int>, Rational>>(const std::vector<int>&,
                                                                     const std::vector<int>&)>
        mul;
    std::function<Rational(const std::vector<int>&)> eps;
};

AlgebraOps group_algebra_ops(int r);
AlgebraOps enveloping_ops(const LieAlgebraGL& g, int cap);

/// Basis of A^{(x)(n+1)} with total monomial degree <= cap, and the two
/// standard differentials:
///   d  (T-side):  sum (-1)^i eps(a_i) . drop slot i
///   d~ (T~-side): sum_{i<n} (-1)^i merge slots (i, i+1) + (-1)^n eps(a_n)
struct TensorComplexLevel {
    std::vector<std::vector<std::vector<int>>> basis;  // tuples of monomials
    std::map<std::vector<std::vector<int>>, int> index;
};
TensorComplexLevel tensor_level(const AlgebraOps& ops, int arity, int cap,
                                const std::vector<std::vector<int>>& monomials);

struct StandardComplexes {
    std::vector<TensorComplexLevel> levels;  // levels[k]: arity k+1 tuples
    std::vector<SparseMatrix> d;             // d[k]: level k -> k-1
    std::vector<SparseMatrix> dt;            // d~[k]: level k -> k-1
};
/// Build both complexes for n-levels 0..nmax with total degree cap.
StandardComplexes standard_complex_differentials(const AlgebraOps& ops, int nmax, int cap,
                                                 const std::vector<std::vector<int>>& monomials);

/// All monomials of the rank-r commutative model with degree <= cap.
std::vector<std::vector<int>> group_algebra_monomials(int r, int cap);
/// All PBW exponent vectors of U(gl_N) with degree <= cap.
std::vector<std::vector<int>> enveloping_monomials(const LieAlgebraGL& g, int cap);

/// Change of variables (g_0,...,g_n) -> (g_0, g_0^{-1} g_1, ..., g_{n-1}^{-1} g_n)
/// on the group-algebra tensor levels; exact on the truncated bases and
/// intertwines d with d~.
SparseMatrix slot_change_of_variables(int r, int cap, const TensorComplexLevel& src,
                                      const TensorComplexLevel& dst);

/// Koszul resolution U(g) (x) Lambda^. g: basis pairs (PBW monomial, subset).
struct KoszulLevel {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> basis;  // (exponents, wedge)
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> index;
};
KoszulLevel koszul_level(const LieAlgebraGL& g, int n, int cap);
/// d(u (x) X_1^...^X_n) = sum_t (-1)^(t-1) u X_t (x) rest
///                      + sum_{s<t} (-1)^(s+t) u (x) [X_s, X_t] ^ rest.
SparseMatrix koszul_differential(const LieAlgebraGL& g, int n, int cap, const KoszulLevel& src,
                                 const KoszulLevel& dst);
/// The U-linear extension of as_n into T~, as a matrix on truncated bases.
SparseMatrix as_to_ttilde(const LieAlgebraGL& g, int n, int cap, const KoszulLevel& src,
                          const TensorComplexLevel& dst);

}  // namespace reglab
