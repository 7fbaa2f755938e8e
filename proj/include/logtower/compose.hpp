#pragma once

#include "logtower/field_elem.hpp"

namespace logtower {

namespace detail {

// m o log: ell_n -> ell_{n+1} and exp(c x) -> x^c. Defined only when the
// exponent polynomial has degree <= 1 (exp of log^2 leaves the lattice).
inline TowerMonomial compose_log(const TowerMonomial& m) {
    Rational linear(0);
    for (const auto& [deg, c] : m.exp_part()) {
        if (deg >= 2)
            throw UnsupportedComposition(
                "composition with log undefined: exp part has degree " + std::to_string(deg));
        linear = c;
    }
    TowerMonomial out = TowerMonomial::log_power(0, linear);
    for (const auto& [n, q] : m.logs()) out = out * TowerMonomial::log_power(n + 1, q);
    return out;
}

// m o exp: ell_n -> ell_{n-1} and x^q -> exp(q x). Defined only when the
// exponent polynomial is zero.
inline TowerMonomial compose_exp(const TowerMonomial& m) {
    if (!m.exp_part().empty())
        throw UnsupportedComposition("composition with exp undefined: monomial has an exp part");
    TowerMonomial out;
    for (const auto& [n, q] : m.logs()) {
        if (n == 0) {
            ExpPoly p;
            p[1] = q;
            out = out * TowerMonomial::exp_of(std::move(p));
        } else {
            out = out * TowerMonomial::log_power(n - 1, q);
        }
    }
    return out;
}

template <typename MonoMap>
LCombo map_terms(const LCombo& f, MonoMap&& mm) {
    LCombo out;
    for (const auto& [m, c] : f.terms()) out.add_term(mm(m), c);
    return out;
}

}  // namespace detail

// f o log. Ring automorphism onto its image; term-by-term on monomials.
inline FieldElem compose_log(const FieldElem& f) {
    auto mm = [](const TowerMonomial& m) { return detail::compose_log(m); };
    return FieldElem(detail::map_terms(f.num(), mm), detail::map_terms(f.den(), mm));
}

// f o exp; inverse of compose_log on its domain.
inline FieldElem compose_exp(const FieldElem& f) {
    auto mm = [](const TowerMonomial& m) { return detail::compose_exp(m); };
    return FieldElem(detail::map_terms(f.num(), mm), detail::map_terms(f.den(), mm));
}

}  // namespace logtower
