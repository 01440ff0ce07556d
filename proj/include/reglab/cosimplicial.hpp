#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "reglab/complex.hpp"
#include "reglab/lie.hpp"

namespace reglab {

/// The slotwise-1-jet model of O(B.GL_N): level n is (K (+) g^vee)^{(x)n},
/// a basis key lists one entry per slot (-1 for the constant function 1,
/// otherwise a dual-basis index).  Boundary cofaces insert a constant slot;
/// interior cofaces apply the truncated group coproduct
///   z_ij  |->  z_ij (x) 1 + 1 (x) z_ij + sum_l z_il (x) z_lj,
/// whose second-order part carries the Lie bracket.  Codegeneracies evaluate
/// one slot at the identity.
class CosimplicialModel {
  public:
    CosimplicialModel(const LieAlgebraGL& g, int max_level);

    const LieAlgebraGL& algebra() const { return *g_; }
    int max_level() const { return L_; }
    int level_dim(int n) const;

    std::vector<int> key_of(int n, int index) const;  // entries in {-1, 0..dim-1}
    int index_of(const std::vector<int>& key) const;

    /// delta^i : level n -> n+1 for 0 <= i <= n+1 (n <= max_level).
    SparseMatrix coface(int n, int i) const;
    /// sigma^i : level n -> n-1 for 0 <= i <= n-1.
    SparseMatrix codegeneracy(int n, int i) const;

    /// Alternating coface sum realized on degrees 0..max_level.
    const FiniteComplex& complex() const { return *cx_; }

    /// Checks every (delta,delta), (sigma,sigma), (sigma,delta) identity whose
    /// composite stays within levels <= max_level+1; returns the number of
    /// identities checked, throws StructureError on failure.
    int verify_cosimplicial_identities() const;

  private:
    const LieAlgebraGL* g_;
    int L_;
    std::unique_ptr<FiniteComplex> cx_;
};

/// The infinitesimal classifying space proper: the quotient of the 1-jet
/// model by the cosimplicial ideal generated by the slot-symmetric relations
/// v (x) w + w (x) v (the image of the squares of the augmentation ideal).
/// Its normalization is where the CE complex appears.
struct NormalizedComplex {
    std::vector<int> ideal_dims;              // dim J^n
    std::vector<SparseMatrix> quotient_proj;  // Q_n: F_n -> M_n
    std::vector<SparseMatrix> quotient_sect;  // S_n: M_n -> F_n (Q S = id)
    std::vector<SparseMatrix> coface_q;       // induced d = alternating sum per level
    std::vector<SparseMatrix> norm_basis;     // columns span N(M)^n inside M_n
    std::unique_ptr<FiniteComplex> quotient_cx;
    std::unique_ptr<FiniteComplex> cx;        // the normalized complex
};
NormalizedComplex normalization(const CosimplicialModel& model);

/// The antisymmetrization identification Lambda^n g^vee -> N(M)^n sending
/// v_1 ^ ... ^ v_n to the normalized class of the alternating tensor; its
/// inverse is the spec's map.  Verifies bijectivity; `intertwines` reports
/// the entrywise comparison with the CE differential.
struct NormalizedIso {
    std::vector<SparseMatrix> lambda_to_norm;  // iota_n, nu_n x binom
    std::vector<SparseMatrix> norm_to_lambda;  // iota_n^{-1}
    bool intertwines;
};
NormalizedIso normalized_iso_to_ce(const CosimplicialModel& model, const NormalizedComplex& norm,
                                   const CEComplex& ce);

/// Phi: wedge the linear parts of the slots (kills any constant slot).
ExteriorCochain phi_map(const CosimplicialModel& model, int n, const Vec& element);
SparseMatrix phi_matrix(const CosimplicialModel& model, const CEComplex& ce, int n);

/// Psi (literal): pull back along (g_0,...,g_n) -> (g_0 g_1^{-1}, ...), then
/// f_0(e) df_1(e) ^ ... ^ df_n(e).
ExteriorCochain psi_map(const CosimplicialModel& model, int n, const Vec& element);
SparseMatrix psi_matrix(const CosimplicialModel& model, const CEComplex& ce, int n);

struct PhiPsiReport {
    int N = 0;
    int max_level = 0;
    bool phi_chain_map = false;
    bool psi_literal_chain_map = false;       // the literal formula, as stated
    std::vector<int> psi_chain_defect;        // c_k with Psi d = c_k d Psi per level step
    std::vector<int> psi_sign_correction;     // eps_k, PsiHat_k = eps_k Psi_k is a chain map
    bool psi_corrected_chain_map = false;
    std::vector<std::optional<Rational>> literal_scalar;    // Phi_* = s_k Psi_* on H^k
    std::vector<std::optional<Rational>> corrected_scalar;  // Phi_* = s_k PsiHat_* on H^k
    std::optional<Rational> homotopy_sign;    // single s with Phi - s PsiHat null-homotopic
    bool homotopy_feasible = false;
};

PhiPsiReport compare_phi_psi(const LieAlgebraGL& g, int max_level);

/// Coordinates of a cocycle in a chosen basis of H^k (image part quotiented).
std::optional<Vec> class_coordinates(const FiniteComplex& cx, int k, const std::vector<Vec>& h_basis,
                                     const Vec& cocycle);

}  // namespace reglab
