#pragma once

#include <vector>

#include "logtower/valuation.hpp"

namespace logtower {

// Multi-index (i_0, ..., i_r) into Y, Y', ..., Y^(r); trailing zeros trimmed.
using MultiIndex = std::vector<unsigned>;

inline MultiIndex trimmed(MultiIndex idx) {
    while (!idx.empty() && idx.back() == 0) idx.pop_back();
    return idx;
}

// Differential polynomial in one indeterminate Y over the field, stored as
// a sparse map multi-index -> coefficient. The zero polynomial is empty.
class DiffPoly {
  public:
    using Coeffs = std::map<MultiIndex, FieldElem>;

    DiffPoly() = default;

    static DiffPoly zero() { return DiffPoly(); }

    static DiffPoly constant(FieldElem c) {
        DiffPoly p;
        p.add_term({}, std::move(c));
        return p;
    }

    // c * Y^(k)
    static DiffPoly derivative_term(unsigned k, FieldElem c = FieldElem::one()) {
        MultiIndex idx(k + 1, 0);
        idx[k] = 1;
        DiffPoly p;
        p.add_term(std::move(idx), std::move(c));
        return p;
    }

    const Coeffs& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Highest derivative order actually present (0 for constants and zero).
    unsigned order() const {
        unsigned r = 0;
        for (const auto& [idx, c] : coeffs_)
            if (!idx.empty()) r = std::max(r, static_cast<unsigned>(idx.size() - 1));
        return r;
    }

    // Total degree in Y and its derivatives.
    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [idx, c] : coeffs_) {
            unsigned s = 0;
            for (unsigned e : idx) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    DiffPoly& add_term(MultiIndex idx, FieldElem c) {
        if (c.is_zero()) return *this;
        idx = trimmed(std::move(idx));
        auto [it, inserted] = coeffs_.try_emplace(std::move(idx), std::move(c));
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
        return *this;
    }

    DiffPoly operator+(const DiffPoly& o) const {
        DiffPoly r(*this);
        for (const auto& [idx, c] : o.coeffs_) r.add_term(idx, c);
        return r;
    }

    DiffPoly operator-() const {
        DiffPoly r(*this);
        for (auto& [idx, c] : r.coeffs_) c = -c;
        return r;
    }

    DiffPoly operator-(const DiffPoly& o) const { return *this + (-o); }

    DiffPoly operator*(const DiffPoly& o) const {
        DiffPoly r;
        for (const auto& [ia, ca] : coeffs_)
            for (const auto& [ib, cb] : o.coeffs_) {
                MultiIndex idx(std::max(ia.size(), ib.size()), 0);
                for (std::size_t k = 0; k < ia.size(); ++k) idx[k] += ia[k];
                for (std::size_t k = 0; k < ib.size(); ++k) idx[k] += ib[k];
                r.add_term(std::move(idx), ca * cb);
            }
        return r;
    }

    DiffPoly scaled(const FieldElem& c) const {
        DiffPoly r;
        for (const auto& [idx, k] : coeffs_) r.add_term(idx, k * c);
        return r;
    }

    DiffPoly pow(unsigned e) const {
        DiffPoly acc = constant(FieldElem::one());
        for (unsigned i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    bool operator==(const DiffPoly& o) const {
        if (coeffs_.size() != o.coeffs_.size()) return false;
        auto it = coeffs_.begin();
        auto jt = o.coeffs_.begin();
        for (; it != coeffs_.end(); ++it, ++jt)
            if (it->first != jt->first || it->second != jt->second) return false;
        return true;
    }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

  private:
    Coeffs coeffs_;
};

// P(y) with derivatives taken by an arbitrary derivation of the field;
// Y^(k) is read as the k-th iterate applied to y.
template <typename Derivation>
FieldElem eval(const DiffPoly& P, const FieldElem& y, Derivation&& D) {
    std::vector<FieldElem> ys{y};
    for (unsigned k = 1; k <= P.order(); ++k) ys.push_back(D(ys.back()));
    FieldElem out = FieldElem::zero();
    for (const auto& [idx, c] : P.coeffs()) {
        FieldElem term = c;
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (idx[k] > 0) term = term * ys[k].pow(static_cast<long>(idx[k]));
        out = out + term;
    }
    return out;
}

inline FieldElem eval(const DiffPoly& P, const FieldElem& y) {
    return eval(P, y, [](const FieldElem& f) { return derive(f); });
}

inline int eventual_sign_of_eval(const DiffPoly& P, const FieldElem& y) {
    return sign_eventual(eval(P, y));
}

namespace detail {

inline Rational binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

// Substitute Y^(k) -> images[k] and expand.
inline DiffPoly substitute(const DiffPoly& P, const std::vector<DiffPoly>& images) {
    DiffPoly out;
    for (const auto& [idx, c] : P.coeffs()) {
        DiffPoly term = DiffPoly::constant(c);
        for (std::size_t k = 0; k < idx.size(); ++k)
            if (idx[k] > 0) term = term * images[k].pow(idx[k]);
        out = out + term;
    }
    return out;
}

}  // namespace detail

// Multiplicative conjugate P_{*a}(Y) = P(aY), expanded by Leibniz:
// (aY)^(k) = sum_j binom(k,j) a^(k-j) Y^(j).
inline DiffPoly mul_conj(const DiffPoly& P, const FieldElem& a) {
    const unsigned r = P.order();
    std::vector<FieldElem> da{a};
    for (unsigned k = 1; k <= r; ++k) da.push_back(derive(da.back()));
    std::vector<DiffPoly> images;
    for (unsigned k = 0; k <= r; ++k) {
        DiffPoly img;
        for (unsigned j = 0; j <= k; ++j)
            img = img + DiffPoly::derivative_term(
                            j, FieldElem::constant(detail::binomial(k, j)) * da[k - j]);
        images.push_back(std::move(img));
    }
    return detail::substitute(P, images);
}

// Compositional conjugate: rewrite P over the same field with derivation
// delta = phi^(-1) d. With d^k y = sum_j F[k][j] delta^j y the table obeys
// F[k+1][j] = d(F[k][j]) + phi F[k][j-1], F[0][0] = 1.
inline DiffPoly comp_conj(const DiffPoly& P, const FieldElem& phi) {
    if (phi.is_zero()) throw AlgebraError("comp_conj with zero phi");
    const unsigned r = P.order();
    std::vector<std::vector<FieldElem>> F(r + 1);
    F[0] = {FieldElem::one()};
    for (unsigned k = 0; k < r; ++k) {
        F[k + 1].assign(k + 2, FieldElem::zero());
        for (unsigned j = 0; j <= k; ++j) {
            F[k + 1][j] = F[k + 1][j] + derive(F[k][j]);
            F[k + 1][j + 1] = F[k + 1][j + 1] + phi * F[k][j];
        }
    }
    std::vector<DiffPoly> images;
    for (unsigned k = 0; k <= r; ++k) {
        DiffPoly img;
        for (unsigned j = 0; j < F[k].size(); ++j)
            img = img + DiffPoly::derivative_term(j, F[k][j]);
        images.push_back(std::move(img));
    }
    return detail::substitute(P, images);
}

struct ChvarResult {
    FieldElem phi;          // g^(-2)
    DiffPoly transformed;   // 4Y'' + g^3 P(g) Y over the delta-derivation
};

// Change of variable for P = 4Y'' + fY along a nonzero g: returns phi and
// the closed form; g^3 * comp_conj(mul_conj(P, g), phi) equals it exactly.
inline ChvarResult chvar_transform(const FieldElem& f, const FieldElem& g) {
    if (g.is_zero()) throw AlgebraError("chvar with zero g");
    DiffPoly P = DiffPoly::derivative_term(2, FieldElem::constant(Rational(4)));
    P.add_term({1}, f);
    const FieldElem phi = (g * g).inverse();
    DiffPoly Q = DiffPoly::derivative_term(2, FieldElem::constant(Rational(4)));
    Q.add_term({1}, g.pow(3) * eval(P, g));
    return {phi, std::move(Q)};
}

}  // namespace logtower
