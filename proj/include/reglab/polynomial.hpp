#pragma once

#include <map>
#include <vector>

#include "reglab/rational.hpp"

namespace reglab {

/// Small exact multivariate polynomial, keyed by exponent vectors.
class Polynomial {
  public:
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    int nvars() const { return nvars_; }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    void add(const std::vector<int>& expo, const Rational& c) {
        if (reglab::is_zero(c)) return;
        auto it = terms_.find(expo);
        if (it == terms_.end())
            terms_[expo] = c;
        else {
            it->second += c;
            if (reglab::is_zero(it->second)) terms_.erase(it);
        }
    }

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        p.add(std::vector<int>(nvars, 0), c);
        return p;
    }

    static Polynomial variable(int nvars, int i) {
        Polynomial p(nvars);
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        p.add(e, rat(1));
        return p;
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add(e, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add(e, -c);
        return r;
    }

    Polynomial operator*(const Rational& s) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.add(e, c * s);
        return r;
    }

    /// Product, dropping terms of total degree above `cap` (-1 keeps all).
    Polynomial mul(const Polynomial& o, int cap = -1) const {
        Polynomial r(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                std::vector<int> e(nvars_);
                int total = 0;
                for (int i = 0; i < nvars_; ++i) {
                    e[i] = e1[i] + e2[i];
                    total += e[i];
                }
                if (cap >= 0 && total > cap) continue;
                r.add(e, c1 * c2);
            }
        return r;
    }

    Rational coefficient(const std::vector<int>& expo) const {
        auto it = terms_.find(expo);
        return it == terms_.end() ? rat(0) : it->second;
    }

    bool is_zero_poly() const { return terms_.empty(); }

    /// binom(x_i, k) as a polynomial in variable i.
    static Polynomial binomial_in_variable(int nvars, int i, long k) {
        Polynomial r = constant(nvars, rat(1));
        for (long j = 0; j < k; ++j) r = r.mul(variable(nvars, i) - constant(nvars, rat(j)));
        return r * (Rational(1) / Rational(factorial(k)));
    }

  private:
    int nvars_;
    std::map<std::vector<int>, Rational> terms_;
};

}  // namespace reglab
