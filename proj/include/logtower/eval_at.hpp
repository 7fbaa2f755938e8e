#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "logtower/field_elem.hpp"

namespace logtower {

// E_k: the point where ell_k crosses zero. E_0 = 0, E_{k+1} = e^{E_k}.
// Every ell_j with j <= k is defined and positive for t > E_k.
inline double iterated_log_threshold(unsigned k) {
    double e = 0.0;
    for (unsigned i = 0; i < k; ++i) e = std::exp(e);
    return e;
}

namespace detail {

inline unsigned max_log_index_of(const LCombo& c) {
    unsigned k = 0;
    for (const auto& [m, coeff] : c.terms())
        if (!m.logs().empty()) k = std::max(k, m.logs().rbegin()->first);
    return k;
}

// log |value| of a monomial at t, all iterated logs positive.
// log_ell[k] = log(ell_k(t)); the exp part is evaluated by sparse Horner.
inline double monomial_log_value(const TowerMonomial& m, double t,
                                 const std::vector<double>& log_ell) {
    double acc = 0.0;
    if (!m.exp_part().empty()) {
        unsigned prev = 0;
        for (const auto& [deg, c] : m.exp_part()) {  // degrees descending
            if (prev != 0)
                for (unsigned i = deg; i < prev; ++i) acc *= t;
            acc += to_double(c);
            prev = deg;
        }
        for (unsigned i = 0; i < prev; ++i) acc *= t;
    }
    for (const auto& [n, q] : m.logs()) acc += to_double(q) * log_ell[n];
    return acc;
}

struct LogScaled {
    int sign;        // -1, 0, +1
    double log_abs;  // meaningful only when sign != 0
};

// log(ell_i(t)) for i = 0..k; requires t beyond the positivity threshold.
inline std::vector<double> log_ell_table(unsigned k, double t) {
    std::vector<double> ell_vals(k + 1), log_ell(k + 1);
    ell_vals[0] = t;
    for (unsigned i = 1; i <= k; ++i) ell_vals[i] = std::log(ell_vals[i - 1]);
    for (unsigned i = 0; i <= k; ++i) log_ell[i] = std::log(ell_vals[i]);
    return log_ell;
}

// log(m(t)) - log(ref(t)) with the exponents differenced exactly first, so
// a huge shared exp part drops out instead of swamping the small log terms.
inline double monomial_log_ratio(const TowerMonomial& m,
                                 const TowerMonomial& ref, double t,
                                 const std::vector<double>& log_ell) {
    ExpPoly diff = m.exp_part();
    for (const auto& [deg, c] : ref.exp_part()) {
        auto it = diff.find(deg);
        if (it == diff.end()) {
            diff[deg] = -c;
        } else {
            it->second -= c;
            if (it->second == 0) diff.erase(it);
        }
    }
    double acc = 0.0;
    if (!diff.empty()) {
        unsigned prev = 0;
        for (const auto& [deg, c] : diff) {  // degrees descending
            if (prev != 0)
                for (unsigned i = deg; i < prev; ++i) acc *= t;
            acc += to_double(c);
            prev = deg;
        }
        for (unsigned i = 0; i < prev; ++i) acc *= t;
    }
    auto a = m.logs().begin();
    auto b = ref.logs().begin();
    while (a != m.logs().end() || b != ref.logs().end()) {
        if (b == ref.logs().end() || (a != m.logs().end() && a->first < b->first)) {
            acc += to_double(a->second) * log_ell[a->first];
            ++a;
        } else if (a == m.logs().end() || b->first < a->first) {
            acc -= to_double(b->second) * log_ell[b->first];
            ++b;
        } else {
            acc += to_double(Rational(a->second - b->second)) * log_ell[a->first];
            ++a;
            ++b;
        }
    }
    return acc;
}

// Sum of terms held as (sign, log|.|), all magnitudes taken relative to the
// dominant monomial so shared overall scale cancels exactly. A sum below
// rounding of its term mass counts as zero.
inline LogScaled combo_log_value(const LCombo& c, double t,
                                 const std::vector<double>& log_ell) {
    if (c.is_zero()) return {0, 0.0};
    const TowerMonomial& ref = c.leading().first;
    std::vector<double> dlog;
    std::vector<double> coeffs;
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& [m, coeff] : c.terms()) {
        dlog.push_back(monomial_log_ratio(m, ref, t, log_ell));
        coeffs.push_back(to_double(coeff));
        top = std::max(top, dlog.back());
    }
    double s = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < dlog.size(); ++i) {
        const double term = coeffs[i] * std::exp(dlog[i] - top);
        s += term;
        mass += std::abs(term);
    }
    if (std::abs(s) < 1e-13 * mass || s == 0.0) return {0, 0.0};
    return {s > 0.0 ? 1 : -1,
            monomial_log_value(ref, t, log_ell) + top + std::log(std::abs(s))};
}

}  // namespace detail

// Least t above which every iterated log appearing in f is positive, so the
// value is defined with an unambiguous sign.
inline double eval_threshold(const FieldElem& f) {
    unsigned k = std::max(detail::max_log_index_of(f.num()),
                          detail::max_log_index_of(f.den()));
    return iterated_log_threshold(k);
}

// Numeric value of f at t. Magnitudes are carried in log scale, so ratios of
// individually overflowing parts still come out right.
inline double eval_at(const FieldElem& f, double t) {
    const double thr = eval_threshold(f);
    if (!(t > thr))
        throw DomainError("eval_at: t must exceed the log tower threshold", thr);
    const unsigned k = std::max(detail::max_log_index_of(f.num()),
                                detail::max_log_index_of(f.den()));
    const auto log_ell = detail::log_ell_table(k, t);
    const auto num = detail::combo_log_value(f.num(), t, log_ell);
    const auto den = detail::combo_log_value(f.den(), t, log_ell);
    if (den.sign == 0) throw PoleError("eval_at: denominator vanished at t");
    if (num.sign == 0) return 0.0;
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

// Sign of f at t, decided in log scale so extreme magnitudes that would
// under- or overflow a double still report the correct sign.
inline int eval_sign_at(const FieldElem& f, double t) {
    const double thr = eval_threshold(f);
    if (!(t > thr))
        throw DomainError("eval_sign_at: t must exceed the log tower threshold",
                          thr);
    const unsigned k = std::max(detail::max_log_index_of(f.num()),
                                detail::max_log_index_of(f.den()));
    const auto log_ell = detail::log_ell_table(k, t);
    const auto num = detail::combo_log_value(f.num(), t, log_ell);
    const auto den = detail::combo_log_value(f.den(), t, log_ell);
    if (den.sign == 0)
        throw PoleError("eval_sign_at: denominator vanished at t");
    return num.sign * den.sign;
}

}  // namespace logtower
