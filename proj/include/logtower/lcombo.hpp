#pragma once

#include <map>
#include <utility>

#include "logtower/monomial.hpp"

namespace logtower {

// Finite rational linear combination of tower monomials, kept sorted with
// the dominant monomial first. No zero coefficients are stored, so
// is_zero() is emptiness and leading() is the asymptotically largest term.
class LCombo {
  public:
    using Terms = std::map<TowerMonomial, Rational, TowerMonomial::DominanceGreater>;

    LCombo() = default;

    static LCombo zero() { return LCombo(); }
    static LCombo one() { return constant(Rational(1)); }

    static LCombo constant(const Rational& c) {
        LCombo r;
        if (c != 0) r.terms_[TowerMonomial::one()] = c;
        return r;
    }

    static LCombo monomial(const TowerMonomial& m, const Rational& c = Rational(1)) {
        LCombo r;
        if (c != 0) r.terms_[m] = c;
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // Dominant term; undefined on zero.
    const std::pair<const TowerMonomial, Rational>& leading() const {
        return *terms_.begin();
    }

    LCombo& add_term(const TowerMonomial& m, const Rational& c) {
        if (c == 0) return *this;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    LCombo operator+(const LCombo& o) const {
        LCombo r(*this);
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    LCombo operator-() const {
        LCombo r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    LCombo operator-(const LCombo& o) const { return *this + (-o); }

    LCombo operator*(const LCombo& o) const {
        LCombo r;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    LCombo scaled(const Rational& c) const {
        LCombo r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    bool operator==(const LCombo& o) const { return terms_ == o.terms_; }
    bool operator!=(const LCombo& o) const { return !(*this == o); }

    // True when the combination is a rational constant (possibly zero).
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

  private:
    Terms terms_;
};

// gamma_n = (ell_0 * ... * ell_n)^(-1), the logarithmic derivative of ell_n.
inline TowerMonomial gamma_monomial(unsigned n) {
    TowerMonomial g;
    for (unsigned k = 0; k <= n; ++k) g = g * TowerMonomial::log_power(k, Rational(-1));
    return g;
}

// m'/m = p'(x) + sum_n q_n gamma_n, so m' = m * (that combination).
inline LCombo derive(const TowerMonomial& m) {
    LCombo out;
    for (const auto& [deg, c] : m.exp_part()) {
        TowerMonomial xpow = TowerMonomial::log_power(0, Rational(deg - 1));
        out.add_term(m * xpow, c * Rational(static_cast<long>(deg)));
    }
    for (const auto& [n, q] : m.logs()) out.add_term(m * gamma_monomial(n), q);
    return out;
}

inline LCombo derive(const LCombo& f) {
    LCombo out;
    for (const auto& [m, c] : f.terms()) out = out + derive(m).scaled(c);
    return out;
}

}  // namespace logtower
