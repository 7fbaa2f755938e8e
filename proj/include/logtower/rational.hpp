#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "logtower/errors.hpp"

namespace logtower {

// Exact arbitrary-precision rational scalar. mpq_class keeps values
// canonical (reduced, positive denominator), so equality is structural.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign_of(const Rational& q) { return sgn(q); }

// q^e for integer e; e < 0 requires q != 0.
inline Rational pow_int(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0) {
        if (e < 0) throw AlgebraError("zero raised to a negative power");
        return Rational(0);
    }
    mpz_class num = q.get_num(), den = q.get_den();
    if (e < 0) {
        std::swap(num, den);
        if (den < 0) { den = -den; num = -num; }
        e = -e;
    }
    mpz_class rn, rd;
    mpz_pow_ui(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
    Rational out(rn, rd);
    out.canonicalize();
    return out;
}

// Exact k-th root when one exists in Q; nullopt otherwise.
inline std::optional<Rational> exact_root(const Rational& q, unsigned long k) {
    if (k == 0) throw AlgebraError("zeroth root");
    if (k == 1) return q;
    if (q < 0 && k % 2 == 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class rn, rd;
    int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k);
    int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k);
    if (!exact_n || !exact_d) return std::nullopt;
    Rational out(rn, rd);
    out.canonicalize();
    return out;
}

// q^e for rational e, exact or nullopt. q^(p/k) = (k-th root of q)^p.
inline std::optional<Rational> pow_exact(const Rational& q, const Rational& e) {
    if (is_integer(e)) {
        if (!e.get_num().fits_slong_p()) throw AlgebraError("exponent too large");
        return pow_int(q, e.get_num().get_si());
    }
    if (q == 0) return (e > 0) ? std::optional<Rational>(Rational(0)) : std::nullopt;
    if (!e.get_den().fits_ulong_p() || !e.get_num().fits_slong_p())
        throw AlgebraError("exponent too large");
    auto root = exact_root(q, e.get_den().get_ui());
    if (!root) return std::nullopt;
    return pow_int(*root, e.get_num().get_si());
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace logtower
