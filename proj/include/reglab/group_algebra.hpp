#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "reglab/padic.hpp"
#include "reglab/polynomial.hpp"

namespace reglab {

/// Truncation context for the completed group algebra of (Z_p)^r in the
/// coordinates z_i = x_i - 1: z-degree bound D, working precision m, and
/// the valuation weights omega_i = omega(x_i) > 1/(p-1).
struct GroupAlgebraContext {
    long p = 5;
    int r = 1;
    int D = 10;
    long m = 6;
    std::vector<Rational> weights;  // defaults to all 1

    GroupAlgebraContext(long p_, int r_, int D_, long m_, std::vector<Rational> w = {});
};

using MultiIndex = std::vector<int>;
inline int degree(const MultiIndex& a) {
    int s = 0;
    for (int x : a) s += x;
    return s;
}

/// Element sum lambda_alpha z^alpha with |alpha| <= D; missing coefficients
/// are exact zeros.
class GroupAlgebraElement {
  public:
    explicit GroupAlgebraElement(const GroupAlgebraContext& ctx) : ctx_(&ctx) {}

    const GroupAlgebraContext& ctx() const { return *ctx_; }
    const std::map<MultiIndex, PadicNumber>& coeffs() const { return coeffs_; }
    void set(const MultiIndex& a, const PadicNumber& v);
    PadicNumber get(const MultiIndex& a) const;

    GroupAlgebraElement operator+(const GroupAlgebraElement& o) const;
    GroupAlgebraElement operator-(const GroupAlgebraElement& o) const;
    /// Product truncated at z-degree D.
    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const;
    GroupAlgebraElement scale(const PadicNumber& s) const;

  private:
    const GroupAlgebraContext* ctx_;
    std::map<MultiIndex, PadicNumber> coeffs_;
};

struct ExtendedValuation {
    bool infinite = true;  // +infinity for zero
    Rational value = Rational(0);
};

/// w(sum lambda_alpha z^alpha) = inf v(lambda_alpha) + sum alpha_i omega_i,
/// over the tracked-nonzero coefficients.
ExtendedValuation valuation_w(const GroupAlgebraElement& x);
bool saturation_member(const GroupAlgebraElement& x);

/// partial_i = log(x_i) truncated: sum_{a=1..D} (-1)^{a-1} z_i^a / a.
GroupAlgebraElement partial_element(const GroupAlgebraContext& ctx, int i);

/// e_alpha = z^alpha / alpha!.
GroupAlgebraElement saturation_generator(const GroupAlgebraContext& ctx, const MultiIndex& alpha);

/// Element of the two-sided tensor square, total bidegree <= D.
class GroupAlgebraTensor {
  public:
    explicit GroupAlgebraTensor(const GroupAlgebraContext& ctx) : ctx_(&ctx) {}
    const GroupAlgebraContext& ctx() const { return *ctx_; }
    const std::map<std::pair<MultiIndex, MultiIndex>, PadicNumber>& coeffs() const { return coeffs_; }
    void add(const MultiIndex& a, const MultiIndex& b, const PadicNumber& v);
    GroupAlgebraTensor operator-(const GroupAlgebraTensor& o) const;
    /// Slotwise product, truncated at total bidegree D.
    GroupAlgebraTensor operator*(const GroupAlgebraTensor& o) const;

  private:
    const GroupAlgebraContext* ctx_;
    std::map<std::pair<MultiIndex, MultiIndex>, PadicNumber> coeffs_;
};

/// Delta(z_i) = z_i (x) 1 + 1 (x) z_i + z_i (x) z_i extended multiplicatively,
/// truncated at total bidegree D.
GroupAlgebraTensor coproduct(const GroupAlgebraElement& x);

struct PrimitivityReport {
    GroupAlgebraTensor residual;
    bool primitive_at_precision;
    /// guaranteed moduli of all residual coefficients (diagnostic)
    std::vector<long> residual_moduli;
    PrimitivityReport(const GroupAlgebraContext& ctx) : residual(ctx), primitive_at_precision(true) {}
};

/// Delta(x) - x (x) 1 - 1 (x) x with every coefficient at tracked precision.
PrimitivityReport primitivity_check(const GroupAlgebraElement& x);

/// Continuous function by its Mahler coefficients c_alpha, |alpha| <= D.
struct MahlerSeries {
    int r;
    int D;
    std::map<MultiIndex, PadicNumber> c;
};

/// Distribution by its moments rho_alpha = mu(binom(lambda, alpha)).
struct Distribution {
    int r;
    int D;
    std::map<MultiIndex, PadicNumber> rho;
};

/// Truncated power series on the open unit polydisc.
struct AmiceSeries {
    int r;
    int D;
    std::map<MultiIndex, PadicNumber> a;
};

AmiceSeries amice_transform(const Distribution& mu);
Distribution amice_inverse(const AmiceSeries& series);
/// Cor. identification D = sum rho_alpha z^alpha.
Distribution distribution_of(const GroupAlgebraElement& x);
GroupAlgebraElement group_algebra_of(const GroupAlgebraContext& ctx, const Distribution& mu);

/// Dirac measure at an integer point of Z_p^r.
Distribution dirac(long p, int r, int D, long precision, const std::vector<long>& point);

/// <mu, f> = sum c_alpha rho_alpha.
PadicNumber pair_distribution(long p, long precision, const Distribution& mu, const MahlerSeries& f);

struct AnalyticityVerdict {
    bool rate_infinite;   // no nonzero coefficients in the window
    Rational rate;        // min over the upper half-window of v(c_alpha)/|alpha|
    bool consistent;      // rate >= threshold
    Rational threshold;
    // Heuristic over a truncation window, not a proof of local analyticity.
};
AnalyticityVerdict local_analyticity_test(long p, const MahlerSeries& f, const Rational& threshold);

/// Mahler coefficients of f on 0..D by forward differences (r = 1).
MahlerSeries mahler_coefficients_1d(long p, int D, long precision,
                                    const std::function<PadicNumber(long)>& f);

struct DerivativeRoutes {
    PadicNumber route_a;  // pairing with the partial_i distribution
    PadicNumber route_b;  // symbolic monomial-basis derivative at 0
    bool agree;
};
DerivativeRoutes derivative_at_identity(const GroupAlgebraContext& ctx, const MahlerSeries& f, int i);

}  // namespace reglab
