#pragma once

#include "logtower/field_elem.hpp"

namespace logtower {

// Valuation of a field element: the exponent data of its dominant monomial
// with the order reversed, so larger germs get smaller valuations and
// v(fg) = v(f) + v(g) holds on the nose. v(0) is the infinite element.
struct ValVector {
    bool infinite = false;
    TowerMonomial key;  // dominant monomial class of the element

    static ValVector inf() { return ValVector{true, TowerMonomial::one()}; }

    bool operator==(const ValVector& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return key == o.key;
    }
    bool operator!=(const ValVector& o) const { return !(*this == o); }

    bool operator<(const ValVector& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return key.dominates(o.key);
    }
    bool operator>(const ValVector& o) const { return o < *this; }
    bool operator<=(const ValVector& o) const { return !(o < *this); }
    bool operator>=(const ValVector& o) const { return !(*this < o); }

    ValVector operator+(const ValVector& o) const {
        if (infinite || o.infinite) return inf();
        return ValVector{false, key * o.key};
    }
};

inline ValVector valuation(const FieldElem& f) {
    if (f.is_zero()) return ValVector::inf();
    return ValVector{false, f.num().leading().first / f.den().leading().first};
}

// Eventual sign of f as a germ at +infinity: -1, 0 or +1. Monomials are
// positive germs, so the dominant coefficients decide.
inline int sign_eventual(const FieldElem& f) {
    if (f.is_zero()) return 0;
    return sign_of(f.num().leading().second) * sign_of(f.den().leading().second);
}

enum class AsymRel { Smaller, Larger, Comparable };  // f < g, f > g, f =< g =< f in germ size

struct CompareResult {
    AsymRel rel;
    bool equivalent;  // f ~ g, i.e. f - g is negligible against g
};

// Asymptotic comparison of |f| and |g| via valuations; the equivalent flag
// additionally reports f ~ g (only possible when comparable).
inline CompareResult compare(const FieldElem& f, const FieldElem& g) {
    const ValVector vf = valuation(f), vg = valuation(g);
    if (vf > vg) return {AsymRel::Smaller, false};
    if (vf < vg) return {AsymRel::Larger, false};
    if (f.is_zero() && g.is_zero()) return {AsymRel::Comparable, true};
    const FieldElem d = f - g;
    return {AsymRel::Comparable, d.is_zero() || valuation(d) > vg};
}

}  // namespace logtower
