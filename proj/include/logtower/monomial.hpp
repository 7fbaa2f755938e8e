#pragma once

#include <map>
#include <utility>

#include "logtower/errors.hpp"
#include "logtower/rational.hpp"

namespace logtower {

// Exponent polynomial p(x) with rational coefficients, zero constant term;
// keyed degree -> coefficient, highest degree first, no zero entries.
using ExpPoly = std::map<unsigned, Rational, std::greater<unsigned>>;

// One multiplicative generator combination
//
//     exp(p(x)) * prod_n ell_n ^ q_n
//
// where ell_0 = x and ell_{n+1} = log ell_n. The exponents q_n are rational,
// so the monomials form a Q-vector space under multiplication. Every
// monomial is a positive germ, and distinct monomials lie in distinct
// asymptotic classes, which makes the dominance order below total.
class TowerMonomial {
  public:
    TowerMonomial() = default;

    static TowerMonomial one() { return TowerMonomial(); }

    // ell_n ^ q
    static TowerMonomial log_power(unsigned n, const Rational& q) {
        TowerMonomial m;
        if (q != 0) m.logs_[n] = q;
        return m;
    }

    // exp(p(x)); p must have zero constant term
    static TowerMonomial exp_of(ExpPoly p) {
        for (const auto& [deg, c] : p)
            if (deg == 0) throw AlgebraError("exp argument has a constant term");
        TowerMonomial m;
        m.exp_part_ = std::move(p);
        m.prune();
        return m;
    }

    const ExpPoly& exp_part() const { return exp_part_; }
    const std::map<unsigned, Rational>& logs() const { return logs_; }

    bool is_one() const { return exp_part_.empty() && logs_.empty(); }

    Rational log_exponent(unsigned n) const {
        auto it = logs_.find(n);
        return it == logs_.end() ? Rational(0) : it->second;
    }

    TowerMonomial operator*(const TowerMonomial& o) const {
        TowerMonomial r(*this);
        for (const auto& [deg, c] : o.exp_part_) r.exp_part_[deg] += c;
        for (const auto& [n, q] : o.logs_) r.logs_[n] += q;
        r.prune();
        return r;
    }

    TowerMonomial inverse() const { return pow(Rational(-1)); }

    TowerMonomial operator/(const TowerMonomial& o) const { return *this * o.inverse(); }

    TowerMonomial pow(const Rational& e) const {
        TowerMonomial r;
        if (e == 0) return r;
        for (const auto& [deg, c] : exp_part_) r.exp_part_[deg] = c * e;
        for (const auto& [n, q] : logs_) r.logs_[n] = q * e;
        return r;
    }

    bool operator==(const TowerMonomial& o) const {
        return exp_part_ == o.exp_part_ && logs_ == o.logs_;
    }
    bool operator!=(const TowerMonomial& o) const { return !(*this == o); }

    // Three-way dominance: +1 if *this is the larger germ, -1 smaller,
    // 0 equal. Lexicographic on the exponent data, exp coefficients
    // degree-major first, then q_0, q_1, ... (x above log x above ...).
    int cmp(const TowerMonomial& o) const {
        auto ia = exp_part_.begin(), ib = o.exp_part_.begin();
        while (ia != exp_part_.end() || ib != o.exp_part_.end()) {
            unsigned da = (ia != exp_part_.end()) ? ia->first : 0;
            unsigned db = (ib != o.exp_part_.end()) ? ib->first : 0;
            if (da == db) {
                int s = cmp3(ia->second, ib->second);
                if (s) return s;
                ++ia; ++ib;
            } else if (da > db) {
                int s = sign_of(ia->second);
                if (s) return s;
                ++ia;
            } else {
                int s = sign_of(ib->second);
                if (s) return -s;
                ++ib;
            }
        }
        auto ja = logs_.begin(), jb = o.logs_.begin();
        while (ja != logs_.end() || jb != o.logs_.end()) {
            bool ea = ja == logs_.end(), eb = jb == o.logs_.end();
            unsigned na = ea ? 0 : ja->first, nb = eb ? 0 : jb->first;
            if (!ea && !eb && na == nb) {
                int s = cmp3(ja->second, jb->second);
                if (s) return s;
                ++ja; ++jb;
            } else if (!ea && (eb || na < nb)) {
                int s = sign_of(ja->second);
                if (s) return s;
                ++ja;
            } else {
                int s = sign_of(jb->second);
                if (s) return -s;
                ++jb;
            }
        }
        return 0;
    }

    bool dominates(const TowerMonomial& o) const { return cmp(o) > 0; }

    // Largest iterated-log index with nonzero exponent; -1 if none.
    int max_log_index() const {
        return logs_.empty() ? -1 : static_cast<int>(logs_.rbegin()->first);
    }

    // Strict-weak order for map keys: larger germs first.
    struct DominanceGreater {
        bool operator()(const TowerMonomial& a, const TowerMonomial& b) const {
            return a.cmp(b) > 0;
        }
    };

  private:
    static int cmp3(const Rational& a, const Rational& b) {
        return a == b ? 0 : (a < b ? -1 : 1);
    }

    void prune() {
        for (auto it = exp_part_.begin(); it != exp_part_.end();)
            it = (it->second == 0) ? exp_part_.erase(it) : std::next(it);
        for (auto it = logs_.begin(); it != logs_.end();)
            it = (it->second == 0) ? logs_.erase(it) : std::next(it);
    }

    ExpPoly exp_part_;
    std::map<unsigned, Rational> logs_;  // index -> exponent, ascending
};

}  // namespace logtower
