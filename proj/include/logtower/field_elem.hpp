#pragma once

#include <utility>

#include "logtower/lcombo.hpp"

namespace logtower {

// Element of the differential field generated by x, exp(polynomials in x)
// and the iterated logarithms: a quotient num/den of linear combinations.
//
// Quotients are never brought to lowest terms; equality is decided by
// cross-multiplication. The only normalization applied is scaling so the
// denominator's leading coefficient is 1, which keeps printing stable.
class FieldElem {
  public:
    FieldElem() : num_(), den_(LCombo::one()) {}

    explicit FieldElem(const Rational& c) : num_(LCombo::constant(c)), den_(LCombo::one()) {}

    explicit FieldElem(LCombo num) : num_(std::move(num)), den_(LCombo::one()) {}

    FieldElem(LCombo num, LCombo den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw AlgebraError("zero denominator");
        normalize();
    }

    static FieldElem zero() { return FieldElem(); }
    static FieldElem one() { return FieldElem(Rational(1)); }
    static FieldElem constant(const Rational& c) { return FieldElem(c); }
    static FieldElem from_monomial(const TowerMonomial& m, const Rational& c = Rational(1)) {
        return FieldElem(LCombo::monomial(m, c));
    }
    // ell_0
    static FieldElem x() { return from_monomial(TowerMonomial::log_power(0, Rational(1))); }

    const LCombo& num() const { return num_; }
    const LCombo& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    bool is_rational_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational rational_value() const {
        if (!is_rational_constant()) throw AlgebraError("not a rational constant");
        return num_.constant_value() / den_.constant_value();
    }

    FieldElem operator+(const FieldElem& o) const {
        return FieldElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    FieldElem operator-(const FieldElem& o) const {
        return FieldElem(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    FieldElem operator-() const {
        FieldElem r(*this);
        r.num_ = -r.num_;
        return r;
    }
    FieldElem operator*(const FieldElem& o) const {
        return FieldElem(num_ * o.num_, den_ * o.den_);
    }
    FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

    FieldElem inverse() const {
        if (is_zero()) throw AlgebraError("division by zero");
        return FieldElem(den_, num_);
    }

    bool operator==(const FieldElem& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElem acc = one(), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Exact rational power; defined for single-monomial quotients whose
    // coefficient has an exact rational root.
    FieldElem pow_rational(const Rational& e) const {
        if (is_integer(e)) {
            if (!e.get_num().fits_slong_p()) throw AlgebraError("exponent too large");
            return pow(e.get_num().get_si());
        }
        if (is_zero()) throw AlgebraError("fractional power of zero");
        if (num_.size() != 1 || den_.size() != 1)
            throw AlgebraError("fractional power of a non-monomial element");
        const auto& [mn, cn] = num_.leading();
        const auto& [md, cd] = den_.leading();
        auto c = pow_exact(cn / cd, e);
        if (!c) throw AlgebraError("coefficient has no exact rational root");
        return from_monomial((mn / md).pow(e), *c);
    }

  private:
    void normalize() {
        const Rational lc = den_.leading().second;
        if (lc != 1) {
            const Rational inv = Rational(1) / lc;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    LCombo num_, den_;
};

inline FieldElem derive(const FieldElem& f) {
    return FieldElem(derive(f.num()) * f.den() - f.num() * derive(f.den()),
                     f.den() * f.den());
}

// f' / f, for nonzero f. Computed as (n'd - nd')/(nd) to avoid squaring.
inline FieldElem logderiv(const FieldElem& f) {
    if (f.is_zero()) throw AlgebraError("logderiv of zero");
    return FieldElem(derive(f.num()) * f.den() - f.num() * derive(f.den()),
                     f.num() * f.den());
}

// omega(z) = -2z' - z^2
inline FieldElem omega_map(const FieldElem& z) {
    return FieldElem(Rational(-2)) * derive(z) - z * z;
}

// sigma(y) = omega(-y'/y) + y^2, for nonzero y
inline FieldElem sigma_map(const FieldElem& y) {
    return omega_map(-logderiv(y)) + y * y;
}

}  // namespace logtower
