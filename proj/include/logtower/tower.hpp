#pragma once

#include <string>
#include <vector>

#include "logtower/valuation.hpp"

namespace logtower {

// Exact generators of the iterated-log scale:
//   ell_0 = x, ell_{n+1} = log ell_n
//   gamma_n = (ell_0 ... ell_n)^(-1)         (= ell_n'/ell_n)
//   lambda_n = gamma_0 + ... + gamma_n       (= -gamma_n'/gamma_n)
//   omega_n = gamma_0^2 + ... + gamma_n^2
//   g_n = (ell_0 ... ell_n)^(1/2)
// Values are cached up to a fixed depth.
class TowerCache {
  public:
    explicit TowerCache(unsigned n_max = 8) : n_max_(n_max) {
        for (unsigned n = 0; n <= n_max_; ++n) {
            ell_.push_back(FieldElem::from_monomial(TowerMonomial::log_power(n, Rational(1))));
            gamma_.push_back(FieldElem::from_monomial(gamma_monomial(n)));
            lambda_.push_back((n == 0 ? FieldElem::zero() : lambda_[n - 1]) + gamma_[n]);
            omega_.push_back((n == 0 ? FieldElem::zero() : omega_[n - 1]) + gamma_[n] * gamma_[n]);
            g_.push_back(FieldElem::from_monomial(gamma_monomial(n).pow(rat(-1, 2))));
        }
    }

    unsigned n_max() const { return n_max_; }

    const FieldElem& ell(unsigned n) const { return at(ell_, n); }
    const FieldElem& gamma(unsigned n) const { return at(gamma_, n); }
    const FieldElem& lambda(unsigned n) const { return at(lambda_, n); }
    const FieldElem& omega_seq(unsigned n) const { return at(omega_, n); }
    const FieldElem& g(unsigned n) const { return at(g_, n); }

  private:
    const FieldElem& at(const std::vector<FieldElem>& v, unsigned n) const {
        if (n >= v.size()) throw AlgebraError("tower index exceeds cache depth");
        return v[n];
    }

    unsigned n_max_;
    std::vector<FieldElem> ell_, gamma_, lambda_, omega_, g_;
};

struct IdentityCheck {
    std::string label;
    unsigned n;
    bool pass;
};

struct IdentitySuiteReport {
    std::vector<IdentityCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Exact verification of the defining identities of the scale, for every
// n <= n_max. All checks are field-element equalities, no tolerances.
inline IdentitySuiteReport identity_suite(const TowerCache& T, unsigned n_max) {
    if (n_max + 1 > T.n_max())
        throw AlgebraError("identity suite needs cache depth n_max + 1");
    IdentitySuiteReport rep;
    const FieldElem two = FieldElem::constant(Rational(2));
    const FieldElem four = FieldElem::constant(Rational(4));
    for (unsigned n = 0; n <= n_max; ++n) {
        rep.checks.push_back({"(a) logderiv(ell_n) = gamma_n", n,
                              logderiv(T.ell(n)) == T.gamma(n)});
        rep.checks.push_back({"(b) logderiv(gamma_n) = -lambda_n", n,
                              logderiv(T.gamma(n)) == -T.lambda(n)});
        rep.checks.push_back({"(c) lambda_{n+1} = lambda_n + gamma_{n+1}", n,
                              T.lambda(n + 1) == T.lambda(n) + T.gamma(n + 1)});
        rep.checks.push_back({"(d) ell_{n+1} gamma_{n+1} = gamma_n", n,
                              T.ell(n + 1) * T.gamma(n + 1) == T.gamma(n)});
        rep.checks.push_back({"(e) omega(lambda_n) = omega_n", n,
                              omega_map(T.lambda(n)) == T.omega_seq(n)});
        rep.checks.push_back({"(f) omega_{n+1} - omega_n = gamma_{n+1}^2", n,
                              T.omega_seq(n + 1) - T.omega_seq(n) ==
                                  T.gamma(n + 1) * T.gamma(n + 1)});
        rep.checks.push_back({"(g) 2 logderiv(g_n) = lambda_n", n,
                              two * logderiv(T.g(n)) == T.lambda(n)});
        rep.checks.push_back({"(h) 4 g_n'' + omega_n g_n = 0", n,
                              (four * derive(derive(T.g(n))) + T.omega_seq(n) * T.g(n))
                                  .is_zero()});
    }
    return rep;
}

struct PcReport {
    bool is_pc;
    std::vector<ValVector> increments;  // v(a_{k+1} - a_k)
    // first k with v(a_{k+1}-a_k) <= v(a_k - a_{k-1}), or -1
    int violation_at;
};

// Finite-prefix pseudo-Cauchy criterion: consecutive differences must be
// nonzero with strictly increasing valuations.
inline PcReport pc_check(const std::vector<FieldElem>& seq) {
    if (seq.size() < 3) throw AlgebraError("pc_check needs at least three elements");
    PcReport rep{true, {}, -1};
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const FieldElem d = seq[k + 1] - seq[k];
        if (d.is_zero()) throw AlgebraError("pc_check: repeated consecutive elements");
        rep.increments.push_back(valuation(d));
    }
    for (std::size_t k = 0; k + 1 < rep.increments.size(); ++k) {
        if (!(rep.increments[k] < rep.increments[k + 1])) {
            rep.is_pc = false;
            if (rep.violation_at < 0) rep.violation_at = static_cast<int>(k);
        }
    }
    return rep;
}

}  // namespace logtower
