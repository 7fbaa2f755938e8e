#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "logtower/diffpoly.hpp"
#include "logtower/valuation.hpp"

namespace logtower {

inline std::string print_rational(const Rational& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

namespace detail {

inline std::string power_suffix(const Rational& q) {
    if (q == 1) return "";
    if (is_integer(q)) return "^" + print_rational(q);
    return "^(" + print_rational(q) + ")";
}

// Polynomial in x with the degrees descending, e.g. "x^2 - 3/2*x".
inline std::string exp_poly_string(const ExpPoly& p) {
    std::string s;
    for (const auto& [deg, c] : p) {
        Rational a = c;
        if (s.empty()) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            if (a < 0) {
                s += " - ";
                a = -a;
            } else {
                s += " + ";
            }
        }
        const std::string xs =
            deg == 1 ? "x" : "x^" + std::to_string(deg);
        s += a == 1 ? xs : print_rational(a) + "*" + xs;
    }
    return s;
}

}  // namespace detail

inline std::string print_canonical(const TowerMonomial& m) {
    std::vector<std::string> factors;
    if (!m.exp_part().empty())
        factors.push_back("exp(" + detail::exp_poly_string(m.exp_part()) + ")");
    for (const auto& [n, q] : m.logs()) {
        const std::string base = n == 0 ? "x" : "ell(" + std::to_string(n) + ")";
        factors.push_back(base + detail::power_suffix(q));
    }
    if (factors.empty()) return "1";
    std::string s = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) s += "*" + factors[i];
    return s;
}

inline std::string print_canonical(const LCombo& c) {
    if (c.is_zero()) return "0";
    std::string s;
    for (const auto& [m, coeff] : c.terms()) {
        Rational a = coeff;
        if (s.empty()) {
            if (a < 0) {
                s += "-";
                a = -a;
            }
        } else {
            if (a < 0) {
                s += " - ";
                a = -a;
            } else {
                s += " + ";
            }
        }
        if (m.is_one())
            s += print_rational(a);
        else
            s += (a == 1 ? "" : print_rational(a) + "*") + print_canonical(m);
    }
    return s;
}

inline std::string print_canonical(const FieldElem& f) {
    if (f.den() == LCombo::one()) return print_canonical(f.num());
    // A one-term denominator has coefficient 1 by normalization, so it
    // folds into the numerator and prints as negative exponents.
    if (f.den().size() == 1) {
        const TowerMonomial inv = f.den().leading().first.inverse();
        return print_canonical(f.num() * LCombo::monomial(inv));
    }
    return "(" + print_canonical(f.num()) + ")/(" + print_canonical(f.den()) + ")";
}

inline std::string print_canonical(const ValVector& v) {
    if (v.infinite) return "infinity";
    return "v(" + print_canonical(v.key) + ")";
}

namespace detail {

inline std::string y_token(unsigned k) {
    if (k <= 3) return "Y" + std::string(k, '\'');
    return "Y^(" + std::to_string(k) + ")";
}

// Graded order, highest derivative weighted first, so 4Y'' + fY prints
// with the Y'' term leading.
inline bool graded_before(const MultiIndex& a, const MultiIndex& b) {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da > db;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = n; i-- > 0;) {
        const unsigned ea = i < a.size() ? a[i] : 0;
        const unsigned eb = i < b.size() ? b[i] : 0;
        if (ea != eb) return ea > eb;
    }
    return false;
}

}  // namespace detail

inline std::string print_canonical(const DiffPoly& p) {
    if (p.coeffs().empty()) return "0";
    std::vector<const std::pair<const MultiIndex, FieldElem>*> terms;
    for (const auto& t : p.coeffs()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) {
        return detail::graded_before(a->first, b->first);
    });
    std::string s;
    for (const auto* t : terms) {
        const auto& [idx, coeff] = *t;
        if (!s.empty()) s += " + ";
        std::string mono;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += detail::y_token(static_cast<unsigned>(k));
            if (idx[k] > 1) mono += "^" + std::to_string(idx[k]);
        }
        const bool plain = coeff.is_rational_constant() &&
                           sign_of(coeff.rational_value()) > 0;
        std::string cs = plain ? print_rational(coeff.rational_value())
                               : "(" + print_canonical(coeff) + ")";
        if (mono.empty())
            s += cs;
        else if (plain && coeff.rational_value() == 1)
            s += mono;
        else
            s += cs + "*" + mono;
    }
    return s;
}

inline std::string relation_symbol(const CompareResult& r) {
    switch (r.rel) {
        case AsymRel::Smaller: return "≺";
        case AsymRel::Larger: return "≻";
        case AsymRel::Comparable: break;
    }
    return "≍";
}

}  // namespace logtower
