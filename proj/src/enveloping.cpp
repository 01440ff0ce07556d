#include "reglab/enveloping.hpp"

#include <algorithm>
#include <functional>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

int expo_degree(const std::vector<int>& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
}

std::vector<int> word_of(const std::vector<int>& expo) {
    std::vector<int> w;
    for (size_t i = 0; i < expo.size(); ++i)
        for (int t = 0; t < expo[i]; ++t) w.push_back(static_cast<int>(i));
    return w;
}

}  // namespace

void EnvelopingElement::add(const std::vector<int>& monomial, const Rational& v) {
    if (static_cast<int>(monomial.size()) != g_->dim()) throw DomainError("EnvelopingElement: bad monomial length");
    if (expo_degree(monomial) > cap_) throw TruncationError("EnvelopingElement: degree exceeds the cap");
    if (reglab::is_zero(v)) return;
    auto it = coeffs_.find(monomial);
    if (it == coeffs_.end())
        coeffs_[monomial] = v;
    else {
        it->second += v;
        if (reglab::is_zero(it->second)) coeffs_.erase(it);
    }
}

EnvelopingElement EnvelopingElement::generator(const LieAlgebraGL& g, int cap, int index) {
    EnvelopingElement e(g, cap);
    std::vector<int> m(g.dim(), 0);
    m[index] = 1;
    e.add(m, rat(1));
    return e;
}

EnvelopingElement EnvelopingElement::one(const LieAlgebraGL& g, int cap) {
    EnvelopingElement e(g, cap);
    e.add(std::vector<int>(g.dim(), 0), rat(1));
    return e;
}

EnvelopingElement EnvelopingElement::operator+(const EnvelopingElement& o) const {
    EnvelopingElement r = *this;
    for (const auto& [m, v] : o.coeffs_) r.add(m, v);
    return r;
}

EnvelopingElement EnvelopingElement::operator-(const EnvelopingElement& o) const {
    EnvelopingElement r = *this;
    for (const auto& [m, v] : o.coeffs_) r.add(m, -v);
    return r;
}

EnvelopingElement straighten_word(const LieAlgebraGL& g, int cap, const std::vector<int>& word) {
    EnvelopingElement out(g, cap);
    if (static_cast<int>(word.size()) > cap) throw TruncationError("straighten_word: word exceeds the cap");
    // rewrite x_b x_a = x_a x_b + [x_b, x_a] at the first descent
    std::function<void(std::vector<int>, Rational)> go = [&](std::vector<int> w, Rational c) {
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] > w[i + 1]) {
                std::vector<int> swapped = w;
                std::swap(swapped[i], swapped[i + 1]);
                go(std::move(swapped), c);
                for (const auto& [m, v] : g.bracket(w[i], w[i + 1])) {
                    std::vector<int> shorter;
                    shorter.reserve(w.size() - 1);
                    for (size_t t = 0; t < w.size(); ++t) {
                        if (t == i) shorter.push_back(m);
                        if (t != i && t != i + 1) shorter.push_back(w[t]);
                    }
                    go(std::move(shorter), c * v);
                }
                return;
            }
        }
        std::vector<int> expo(g.dim(), 0);
        for (int x : w) ++expo[x];
        out.add(expo, c);
    };
    go(word, rat(1));
    return out;
}

EnvelopingElement EnvelopingElement::operator*(const EnvelopingElement& o) const {
    EnvelopingElement r(*g_, cap_);
    for (const auto& [m1, v1] : coeffs_)
        for (const auto& [m2, v2] : o.coeffs_) {
            if (expo_degree(m1) + expo_degree(m2) > cap_)
                throw TruncationError("EnvelopingElement::*: product could exceed the cap");
            std::vector<int> w = word_of(m1);
            std::vector<int> w2 = word_of(m2);
            w.insert(w.end(), w2.begin(), w2.end());
            EnvelopingElement s = straighten_word(*g_, cap_, w);
            for (const auto& [m, v] : s.coeffs()) r.add(m, v * v1 * v2);
        }
    return r;
}

Rational EnvelopingElement::augmentation() const {
    auto it = coeffs_.find(std::vector<int>(g_->dim(), 0));
    return it == coeffs_.end() ? rat(0) : it->second;
}

EnvelopingTensor antisymmetrization(const LieAlgebraGL& g, const std::vector<int>& generators) {
    const int n = static_cast<int>(generators.size());
    if (n > 4) throw DomainError("antisymmetrization: arity capped at 4");
    EnvelopingTensor out;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    int sign = 1;
    for (;;) {
        // slot j holds X_{generators[sigma^{-1}(j)]}; build sigma^{-1} directly
        std::vector<std::vector<int>> slots(n, std::vector<int>(g.dim(), 0));
        for (int j = 0; j < n; ++j) slots[j][generators[perm[j]]] = 1;
        // perm acts as sigma^{-1} when read slotwise
        out[slots] += rat(sign);
        if (reglab::is_zero(out[slots])) out.erase(slots);
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
    return out;
}

AlgebraOps group_algebra_ops(int r) {
    AlgebraOps ops;
    ops.rank = r;
    ops.deg = [](const std::vector<int>& m) { return expo_degree(m); };
    ops.mul = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c(a.size());
        for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
        return std::vector<std::pair<std::vector<int>, Rational>>{{c, rat(1)}};
    };
    ops.eps = [](const std::vector<int>& m) { return expo_degree(m) == 0 ? rat(1) : rat(0); };
    return ops;
}

AlgebraOps enveloping_ops(const LieAlgebraGL& g, int cap) {
    AlgebraOps ops;
    ops.rank = g.dim();
    ops.deg = [](const std::vector<int>& m) { return expo_degree(m); };
    ops.mul = [&g, cap](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> w = word_of(a);
        std::vector<int> w2 = word_of(b);
        w.insert(w.end(), w2.begin(), w2.end());
        EnvelopingElement s = straighten_word(g, cap, w);
        std::vector<std::pair<std::vector<int>, Rational>> out(s.coeffs().begin(), s.coeffs().end());
        return out;
    };
    ops.eps = [](const std::vector<int>& m) { return expo_degree(m) == 0 ? rat(1) : rat(0); };
    return ops;
}

std::vector<std::vector<int>> group_algebra_monomials(int r, int cap) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == r) {
            out.push_back(cur);
            return;
        }
        for (int a = 0; a <= rem; ++a) {
            cur[pos] = a;
            rec(pos + 1, rem - a);
        }
        cur[pos] = 0;
    };
    rec(0, cap);
    return out;
}

std::vector<std::vector<int>> enveloping_monomials(const LieAlgebraGL& g, int cap) {
    return group_algebra_monomials(g.dim(), cap);
}

TensorComplexLevel tensor_level(const AlgebraOps& ops, int arity, int cap,
                                const std::vector<std::vector<int>>& monomials) {
    TensorComplexLevel lvl;
    std::vector<std::vector<int>> cur(arity);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == arity) {
            lvl.index[cur] = static_cast<int>(lvl.basis.size());
            lvl.basis.push_back(cur);
            return;
        }
        for (const auto& m : monomials) {
            int d = ops.deg(m);
            if (d > rem) continue;
            cur[pos] = m;
            rec(pos + 1, rem - d);
        }
    };
    rec(0, cap);
    return lvl;
}

StandardComplexes standard_complex_differentials(const AlgebraOps& ops, int nmax, int cap,
                                                 const std::vector<std::vector<int>>& monomials) {
    StandardComplexes sc;
    for (int n = 0; n <= nmax; ++n) sc.levels.push_back(tensor_level(ops, n + 1, cap, monomials));
    sc.d.emplace_back(0, static_cast<int>(sc.levels[0].basis.size()));
    sc.dt.emplace_back(0, static_cast<int>(sc.levels[0].basis.size()));
    for (int n = 1; n <= nmax; ++n) {
        const auto& src = sc.levels[n];
        const auto& dst = sc.levels[n - 1];
        SparseMatrix d(static_cast<int>(dst.basis.size()), static_cast<int>(src.basis.size()));
        SparseMatrix dt(static_cast<int>(dst.basis.size()), static_cast<int>(src.basis.size()));
        for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
            const auto& tup = src.basis[col];
            // d: drop slot i weighted by the augmentation
            for (int i = 0; i <= n; ++i) {
                Rational e = ops.eps(tup[i]);
                if (reglab::is_zero(e)) continue;
                std::vector<std::vector<int>> rest;
                for (int t = 0; t <= n; ++t)
                    if (t != i) rest.push_back(tup[t]);
                Rational s = (i % 2 == 0) ? e : -e;
                d.add(dst.index.at(rest), col, s);
            }
            // d~: merge (i, i+1), then augment the last slot
            for (int i = 0; i < n; ++i) {
                for (const auto& [prod, pv] : ops.mul(tup[i], tup[i + 1])) {
                    std::vector<std::vector<int>> merged;
                    for (int t = 0; t <= n; ++t) {
                        if (t == i)
                            merged.push_back(prod);
                        else if (t != i + 1)
                            merged.push_back(tup[t]);
                    }
                    Rational s = (i % 2 == 0) ? pv : -pv;
                    dt.add(dst.index.at(merged), col, s);
                }
            }
            Rational e = ops.eps(tup[n]);
            if (!reglab::is_zero(e)) {
                std::vector<std::vector<int>> rest(tup.begin(), tup.end() - 1);
                Rational s = (n % 2 == 0) ? e : -e;
                dt.add(dst.index.at(rest), col, s);
            }
        }
        sc.d.push_back(std::move(d));
        sc.dt.push_back(std::move(dt));
    }
    return sc;
}

SparseMatrix slot_change_of_variables(int r, int cap, const TensorComplexLevel& src,
                                      const TensorComplexLevel& dst) {
    // z^alpha = sum_{beta <= alpha} (-1)^{|alpha - beta|} binom(alpha, beta) x^beta,
    // transform exponent tuples along (g_0,...,g_n) -> (g_0, g_0^{-1}g_1, ...),
    // then expand x^gamma = prod binom(gamma, alpha) z^alpha (gamma may be negative).
    SparseMatrix out(static_cast<int>(dst.basis.size()), static_cast<int>(src.basis.size()));
    const int arity = static_cast<int>(src.basis.empty() ? 0 : src.basis[0].size());
    for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
        const auto& tup = src.basis[col];
        // enumerate x-exponent tuples beta_i <= alpha_i slotwise
        std::vector<std::vector<int>> beta(arity, std::vector<int>(r, 0));
        std::function<void(int, Rational)> slots = [&](int slot, Rational coef) {
            if (slot == arity) {
                // gamma_0 = beta_0, gamma_j = beta_j - beta_{j-1} (integer vectors)
                std::vector<std::vector<long>> gamma(arity, std::vector<long>(r, 0));
                for (int i = 0; i < r; ++i) gamma[0][i] = beta[0][i];
                for (int j = 1; j < arity; ++j)
                    for (int i = 0; i < r; ++i) gamma[j][i] = beta[j][i] - beta[j - 1][i];
                // expand every slot x^gamma into z-monomials within the cap
                std::vector<std::vector<int>> zz(arity, std::vector<int>(r, 0));
                std::function<void(int, int, Rational)> expand = [&](int slot2, int rem, Rational c2) {
                    if (slot2 == arity) {
                        auto it = dst.index.find(zz);
                        if (it != dst.index.end()) out.add(it->second, col, c2);
                        return;
                    }
                    // per slot: product over coordinates of binom(gamma, a)
                    std::vector<int> a(r, 0);
                    std::function<void(int, int, Rational)> coords = [&](int pos, int rem2, Rational c3) {
                        if (pos == r) {
                            zz[slot2] = a;
                            expand(slot2 + 1, rem2, c3);
                            return;
                        }
                        for (int e = 0; e <= rem2; ++e) {
                            Rational b = mahler_binomial_exact(rat(gamma[slot2][pos]), e);
                            if (reglab::is_zero(b)) continue;
                            a[pos] = e;
                            coords(pos + 1, rem2 - e, c3 * b);
                        }
                        a[pos] = 0;
                    };
                    coords(0, rem, c2);
                };
                expand(0, cap, coef);
                return;
            }
            // beta choices for this slot with the alternating binomial weight
            const std::vector<int>& alpha = tup[slot];
            std::vector<int> b(r, 0);
            std::function<void(int, Rational)> coords = [&](int pos, Rational c2) {
                if (pos == r) {
                    beta[slot] = b;
                    slots(slot + 1, c2);
                    return;
                }
                for (int e = 0; e <= alpha[pos]; ++e) {
                    Integer bc;
                    mpz_bin_uiui(bc.get_mpz_t(), static_cast<unsigned long>(alpha[pos]),
                                 static_cast<unsigned long>(e));
                    Rational w = Rational(bc) * Rational((alpha[pos] - e) % 2 == 0 ? 1 : -1);
                    b[pos] = e;
                    coords(pos + 1, c2 * w);
                }
                b[pos] = 0;
            };
            coords(0, coef);
            return;
        };
        slots(0, rat(1));
    }
    return out;
}

KoszulLevel koszul_level(const LieAlgebraGL& g, int n, int cap) {
    KoszulLevel lvl;
    for (const auto& u : enveloping_monomials(g, cap)) {
        if (expo_degree(u) + n > cap) continue;
        for (const auto& wedge : combinations(g.dim(), n)) {
            lvl.index[{u, wedge}] = static_cast<int>(lvl.basis.size());
            lvl.basis.emplace_back(u, wedge);
        }
    }
    return lvl;
}

SparseMatrix koszul_differential(const LieAlgebraGL& g, int n, int cap, const KoszulLevel& src,
                                 const KoszulLevel& dst) {
    SparseMatrix out(static_cast<int>(dst.basis.size()), static_cast<int>(src.basis.size()));
    for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
        const auto& [u, wedge] = src.basis[col];
        // sum_t (-1)^(t-1) u X_t (x) rest
        for (size_t t = 0; t < wedge.size(); ++t) {
            std::vector<int> w = word_of(u);
            w.push_back(wedge[t]);
            EnvelopingElement prod = straighten_word(g, cap, w);
            std::vector<int> rest;
            for (size_t s = 0; s < wedge.size(); ++s)
                if (s != t) rest.push_back(wedge[s]);
            Rational sign = (t % 2 == 0) ? rat(1) : rat(-1);
            for (const auto& [m, v] : prod.coeffs()) {
                auto it = dst.index.find({m, rest});
                if (it == dst.index.end()) throw TruncationError("koszul_differential: cap too small");
                out.add(it->second, col, sign * v);
            }
        }
        // sum_{s<t} (-1)^(s+t) u (x) [X_s, X_t] ^ rest
        for (size_t s = 0; s < wedge.size(); ++s)
            for (size_t t = s + 1; t < wedge.size(); ++t) {
                std::vector<int> rest;
                for (size_t q = 0; q < wedge.size(); ++q)
                    if (q != s && q != t) rest.push_back(wedge[q]);
                for (const auto& [m, v] : g.bracket(wedge[s], wedge[t])) {
                    // insert m into the sorted rest with a sign
                    std::vector<int> nw = rest;
                    int pos = 0;
                    while (pos < static_cast<int>(nw.size()) && nw[pos] < m) ++pos;
                    if (pos < static_cast<int>(nw.size()) && nw[pos] == m) continue;
                    nw.insert(nw.begin() + pos, m);
                    int sgn = ((s + t) % 2 == 0 ? 1 : -1) * (pos % 2 == 0 ? 1 : -1);
                    auto it = dst.index.find({u, nw});
                    if (it == dst.index.end()) throw TruncationError("koszul_differential: cap too small");
                    out.add(it->second, col, v * rat(sgn));
                }
            }
    }
    return out;
}

SparseMatrix as_to_ttilde(const LieAlgebraGL& g, int n, int cap, const KoszulLevel& src,
                          const TensorComplexLevel& dst) {
    SparseMatrix out(static_cast<int>(dst.basis.size()), static_cast<int>(src.basis.size()));
    for (int col = 0; col < static_cast<int>(src.basis.size()); ++col) {
        const auto& [u, wedge] = src.basis[col];
        for (const auto& [slots, v] : antisymmetrization(g, wedge)) {
            std::vector<std::vector<int>> tup;
            tup.push_back(u);
            for (const auto& s : slots) tup.push_back(s);
            auto it = dst.index.find(tup);
            if (it == dst.index.end()) throw TruncationError("as_to_ttilde: cap too small");
            out.add(it->second, col, v);
        }
    }
    return out;
}

}  // namespace reglab
