#pragma once

#include <map>
#include <memory>
#include <vector>

#include "reglab/complex.hpp"
#include "reglab/sparse.hpp"

namespace reglab {

/// gl_N with the E_ij basis, flattened as a = N*i + j (0-based).
/// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj; antisymmetry and the Jacobi
/// identity are checked once at construction.
class LieAlgebraGL {
  public:
    explicit LieAlgebraGL(int N);

    int N() const { return N_; }
    int dim() const { return N_ * N_; }
    int index(int i, int j) const { return N_ * i + j; }
    std::pair<int, int> entry(int a) const { return {a / N_, a % N_}; }

    /// [E_a, E_b] as a sparse combination of basis elements.
    const std::vector<std::pair<int, Rational>>& bracket(int a, int b) const;

    /// Tr(E_{t_0} . E_{t_1} ... E_{t_{k-1}}) -- 1 or 0 for basis matrices.
    Rational trace_of_product(const std::vector<int>& word) const;

  private:
    int N_;
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> brackets_;
};

/// Element of Lambda^k g^vee; keys are strictly increasing index tuples.
class ExteriorCochain {
  public:
    ExteriorCochain(const LieAlgebraGL& g, int degree);

    const LieAlgebraGL& algebra() const { return *g_; }
    int degree() const { return k_; }
    const std::map<std::vector<int>, Rational>& coeffs() const { return coeffs_; }

    void set(const std::vector<int>& sorted_tuple, const Rational& v);
    /// Add v on an arbitrary tuple: sorts, applies the sign, drops repeats.
    void add_signed(std::vector<int> tuple, const Rational& v);
    /// Evaluate on an arbitrary basis tuple (multilinear + alternating).
    Rational eval(std::vector<int> tuple) const;

    ExteriorCochain operator+(const ExteriorCochain& o) const;
    ExteriorCochain operator-(const ExteriorCochain& o) const;
    ExteriorCochain operator*(const Rational& s) const;
    bool operator==(const ExteriorCochain& o) const;
    bool is_zero() const { return coeffs_.empty(); }

  private:
    const LieAlgebraGL* g_;
    int k_;
    std::map<std::vector<int>, Rational> coeffs_;
};

/// (dc)(x_0,...,x_k) = sum_{i<j} (-1)^{i+j} c([x_i,x_j], x_0,...,^x_i,...,^x_j,...,x_k).
ExteriorCochain ce_differential(const ExteriorCochain& c);

/// The Chevalley-Eilenberg complex Lambda^* g^vee in degrees 0..dim(g),
/// with the basis of degree k indexed by sorted k-subsets.
class CEComplex {
  public:
    explicit CEComplex(const LieAlgebraGL& g);

    const LieAlgebraGL& algebra() const { return *g_; }
    const FiniteComplex& complex() const { return *cx_; }
    const std::vector<std::vector<int>>& basis(int k) const { return bases_[k]; }
    int basis_index(int k, const std::vector<int>& tuple) const;

    Vec coords(const ExteriorCochain& c) const;
    ExteriorCochain cochain(int k, const Vec& coords) const;

  private:
    const LieAlgebraGL* g_;
    std::vector<std::vector<std::vector<int>>> bases_;
    std::map<std::vector<int>, int> index_;  // keyed by (k prepended) tuple
    std::unique_ptr<FiniteComplex> cx_;
};

/// The primitive (2n-1)-cocycle p_n: coefficient ((n-1)!)^2/(2n-1)! on the
/// signed sum of traces over all argument permutations.
ExteriorCochain primitive_element(const LieAlgebraGL& g, int n);

/// Element of Sym^n g^vee; keys are non-decreasing index tuples.
class SymPolynomial {
  public:
    SymPolynomial(const LieAlgebraGL& g, int degree);

    const LieAlgebraGL& algebra() const { return *g_; }
    int degree() const { return n_; }
    const std::map<std::vector<int>, Rational>& coeffs() const { return coeffs_; }
    void add(std::vector<int> multiset, const Rational& v);
    bool operator==(const SymPolynomial& o) const;
    bool is_zero() const { return coeffs_.empty(); }

  private:
    const LieAlgebraGL* g_;
    int n_;
    std::map<std::vector<int>, Rational> coeffs_;
};

/// theta(X_a) acting on Sym^n as a derivation, theta(X_a)f(Y) = f([Y, X_a]).
SymPolynomial coadjoint_action(int a, const SymPolynomial& f);

/// Echelonized basis of (Sym^n g^vee)^g via the invariance linear system.
std::vector<SymPolynomial> invariant_polynomials(const LieAlgebraGL& g, int n);

/// Sorted k-subsets of {0..n-1}.
std::vector<std::vector<int>> combinations(int n, int k);
/// Non-decreasing k-tuples over {0..n-1}.
std::vector<std::vector<int>> multisets(int n, int k);

}  // namespace reglab
