#pragma once

#include <string>
#include <vector>

#include "logtower/diffpoly.hpp"

namespace logtower {

// Abstract syntax produced by the grammar below. `text` keeps the source
// slice so lowering failures can name the offending subterm.
//
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := '-' factor | power
//   power    := atom ('^' exponent)?
//   exponent := '-'? nat | '(' rational ')'        (rational = '-'? nat ('/' nat)?)
//   atom     := nat | 'x' | builtin '(' nat ')' | 'exp' '(' expr ')'
//             | 'log' '(' expr ')' | ytoken | '(' expr ')'
//   builtin  := 'ell' | 'gamma' | 'lambda' | 'omega_seq' | 'g'
//   ytoken   := 'Y' ("'"* | '^(' nat ')')          (diffpoly input only)
//
// After a ytoken, '^(' k ')' marks the k-th derivative; plain '^' k is a
// power, so the cube of Y' is written Y'^3.
struct SourceExpr {
    enum class Kind {
        Number,
        X,
        Builtin,
        YDeriv,
        Add,
        Sub,
        Neg,
        Mul,
        Div,
        Pow,
        Exp,
        Log,
    };
    Kind kind;
    Rational value;                // Number; Pow exponent
    std::string name;              // Builtin
    unsigned index = 0;            // Builtin argument; YDeriv order
    std::vector<SourceExpr> args;
    std::string text;
};

namespace detail {

class Parser {
  public:
    Parser(const std::string& src, bool allow_y, unsigned max_order)
        : src_(src), allow_y_(allow_y), max_order_(max_order) {}

    SourceExpr parse() {
        SourceExpr e = expr();
        skip_ws();
        if (pos_ != src_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return e;
    }

  private:
    const std::string& src_;
    std::size_t pos_ = 0;
    bool allow_y_;
    unsigned max_order_;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    SourceExpr finish(SourceExpr e, std::size_t start) {
        e.text = src_.substr(start, pos_ - start);
        return e;
    }

    unsigned natural() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ == start) throw SyntaxError("expected a number", pos_);
        unsigned long v = std::stoul(src_.substr(start, pos_ - start));
        return static_cast<unsigned>(v);
    }

    Rational rational() {
        skip_ws();
        bool neg = eat('-');
        long num = static_cast<long>(natural());
        long den = 1;
        if (eat('/')) den = static_cast<long>(natural());
        if (den == 0) throw SyntaxError("zero denominator in exponent", pos_);
        return rat(neg ? -num : num, den);
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        return src_.substr(start, pos_ - start);
    }

    SourceExpr expr() {
        skip_ws();
        const std::size_t start = pos_;
        SourceExpr lhs = term();
        for (;;) {
            if (eat('+')) {
                SourceExpr e{SourceExpr::Kind::Add};
                e.args = {std::move(lhs), term()};
                lhs = finish(std::move(e), start);
            } else if (eat('-')) {
                SourceExpr e{SourceExpr::Kind::Sub};
                e.args = {std::move(lhs), term()};
                lhs = finish(std::move(e), start);
            } else {
                return lhs;
            }
        }
    }

    SourceExpr term() {
        skip_ws();
        const std::size_t start = pos_;
        SourceExpr lhs = factor();
        for (;;) {
            if (eat('*')) {
                SourceExpr e{SourceExpr::Kind::Mul};
                e.args = {std::move(lhs), factor()};
                lhs = finish(std::move(e), start);
            } else if (eat('/')) {
                SourceExpr e{SourceExpr::Kind::Div};
                e.args = {std::move(lhs), factor()};
                lhs = finish(std::move(e), start);
            } else {
                return lhs;
            }
        }
    }

    SourceExpr factor() {
        skip_ws();
        const std::size_t start = pos_;
        if (eat('-')) {
            SourceExpr e{SourceExpr::Kind::Neg};
            e.args = {factor()};
            return finish(std::move(e), start);
        }
        return power();
    }

    SourceExpr power() {
        skip_ws();
        const std::size_t start = pos_;
        SourceExpr base = atom();
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '^') {
            ++pos_;
            SourceExpr e{SourceExpr::Kind::Pow};
            if (eat('(')) {
                e.value = rational();
                expect(')');
            } else {
                // A bare exponent is an integer; fractions need parentheses
                // so that x^2/log(x) stays a quotient of powers.
                bool neg = eat('-');
                long n = static_cast<long>(natural());
                e.value = Rational(neg ? -n : n);
            }
            e.args = {std::move(base)};
            return finish(std::move(e), start);
        }
        return base;
    }

    SourceExpr atom() {
        skip_ws();
        const std::size_t start = pos_;
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            SourceExpr e{SourceExpr::Kind::Number};
            e.value = Rational(static_cast<long>(natural()));
            return finish(std::move(e), start);
        }
        if (c == '(') {
            expect('(');
            SourceExpr e = expr();
            expect(')');
            e.text = src_.substr(start, pos_ - start);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::string id = ident();
            if (id == "x") {
                SourceExpr e{SourceExpr::Kind::X};
                return finish(std::move(e), start);
            }
            if (id == "Y") return ytoken(start);
            if (id == "exp" || id == "log") {
                SourceExpr e{id == "exp" ? SourceExpr::Kind::Exp
                                         : SourceExpr::Kind::Log};
                expect('(');
                e.args = {expr()};
                expect(')');
                return finish(std::move(e), start);
            }
            if (id == "ell" || id == "gamma" || id == "lambda" ||
                id == "omega_seq" || id == "g") {
                SourceExpr e{SourceExpr::Kind::Builtin};
                e.name = id;
                expect('(');
                e.index = natural();
                expect(')');
                return finish(std::move(e), start);
            }
            throw SyntaxError("unknown identifier '" + id + "'", start);
        }
        throw SyntaxError("expected an expression", pos_);
    }

    SourceExpr ytoken(std::size_t start) {
        if (!allow_y_)
            throw SyntaxError("Y is only valid in a differential polynomial", start);
        SourceExpr e{SourceExpr::Kind::YDeriv};
        unsigned order = 0;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '\'') {
            while (pos_ < src_.size() && src_[pos_] == '\'') {
                ++order;
                ++pos_;
            }
        } else if (pos_ + 1 < src_.size() && src_[pos_] == '^' &&
                   src_[pos_ + 1] == '(') {
            pos_ += 2;
            order = natural();
            expect(')');
        }
        if (order > max_order_)
            throw LoweringError("derivative order " + std::to_string(order) +
                                " exceeds the configured maximum " +
                                std::to_string(max_order_));
        e.index = order;
        return finish(std::move(e), start);
    }
};

inline FieldElem builtin_elem(const std::string& name, unsigned n) {
    if (name == "ell")
        return FieldElem::from_monomial(TowerMonomial::log_power(n, Rational(1)));
    if (name == "gamma") return FieldElem::from_monomial(gamma_monomial(n));
    if (name == "g")
        return FieldElem::from_monomial(gamma_monomial(n).pow(rat(-1, 2)));
    FieldElem acc = FieldElem::zero();
    for (unsigned k = 0; k <= n; ++k) {
        FieldElem gk = FieldElem::from_monomial(gamma_monomial(k));
        acc = acc + (name == "lambda" ? gk : gk * gk);
    }
    return acc;
}

[[noreturn]] inline void lowering_fail(const std::string& why,
                                       const SourceExpr& at) {
    throw LoweringError(why + " in '" + at.text + "'");
}

inline FieldElem lower_expr(const SourceExpr& e);

inline FieldElem lower_exp(const SourceExpr& e) {
    const FieldElem arg = lower_expr(e.args[0]);
    if (!(arg.den() == LCombo::one()))
        lowering_fail("exp argument must be a polynomial in x", e);
    ExpPoly p;
    for (const auto& [m, c] : arg.num().terms()) {
        if (!m.exp_part().empty())
            lowering_fail("exp argument must be a polynomial in x", e);
        if (m.logs().empty())
            lowering_fail("exp argument has a constant term", e);
        if (m.logs().size() != 1 || m.logs().begin()->first != 0)
            lowering_fail("exp argument must be a polynomial in x", e);
        const Rational& q = m.logs().begin()->second;
        if (!is_integer(q) || sign_of(q) < 0)
            lowering_fail("exp argument must be a polynomial in x", e);
        p[static_cast<unsigned>(q.get_num().get_si())] = c;
    }
    if (p.empty()) return FieldElem::one();
    return FieldElem::from_monomial(TowerMonomial::exp_of(std::move(p)));
}

inline FieldElem lower_log(const SourceExpr& e) {
    const FieldElem arg = lower_expr(e.args[0]);
    if (arg.num().size() != 1 || arg.den().size() != 1)
        lowering_fail("log argument must be a monomial", e);
    const auto& [mn, cn] = arg.num().leading();
    const auto& [md, cd] = arg.den().leading();
    if (cn != cd) lowering_fail("log argument must have coefficient 1", e);
    const TowerMonomial m = mn * md.inverse();
    LCombo out;
    for (const auto& [deg, c] : m.exp_part())
        out.add_term(TowerMonomial::log_power(0, Rational(deg)), c);
    for (const auto& [k, q] : m.logs())
        out.add_term(TowerMonomial::log_power(k + 1, Rational(1)), q);
    return FieldElem(out);
}

inline FieldElem lower_expr(const SourceExpr& e) {
    using K = SourceExpr::Kind;
    try {
        switch (e.kind) {
            case K::Number: return FieldElem::constant(e.value);
            case K::X:
                return FieldElem::from_monomial(
                    TowerMonomial::log_power(0, Rational(1)));
            case K::Builtin: return detail::builtin_elem(e.name, e.index);
            case K::Add: return lower_expr(e.args[0]) + lower_expr(e.args[1]);
            case K::Sub: return lower_expr(e.args[0]) - lower_expr(e.args[1]);
            case K::Neg: return -lower_expr(e.args[0]);
            case K::Mul: return lower_expr(e.args[0]) * lower_expr(e.args[1]);
            case K::Div: return lower_expr(e.args[0]) / lower_expr(e.args[1]);
            case K::Pow: return lower_expr(e.args[0]).pow_rational(e.value);
            case K::Exp: return lower_exp(e);
            case K::Log: return lower_log(e);
            case K::YDeriv: break;
        }
    } catch (const AlgebraError& err) {
        lowering_fail(err.what(), e);
    }
    lowering_fail("Y is only valid in a differential polynomial", e);
}

// Either a coefficient or a genuine differential polynomial, promoted on
// demand while lowering diffpoly syntax.
struct DpValue {
    bool is_poly = false;
    FieldElem f = FieldElem::zero();
    DiffPoly p;

    DiffPoly as_poly() const {
        return is_poly ? p : DiffPoly::constant(f);
    }
};

inline DpValue lower_dp(const SourceExpr& e) {
    using K = SourceExpr::Kind;
    if (e.kind == K::YDeriv) {
        DpValue v;
        v.is_poly = true;
        v.p = DiffPoly::derivative_term(e.index, FieldElem::one());
        return v;
    }
    auto field_only = [](const SourceExpr& node) {
        DpValue v;
        v.f = lower_expr(node);
        return v;
    };
    try {
        switch (e.kind) {
            case K::Add:
            case K::Sub: {
                DpValue a = lower_dp(e.args[0]), b = lower_dp(e.args[1]);
                if (!a.is_poly && !b.is_poly) return field_only(e);
                DpValue v;
                v.is_poly = true;
                v.p = e.kind == K::Add ? a.as_poly() + b.as_poly()
                                       : a.as_poly() - b.as_poly();
                return v;
            }
            case K::Neg: {
                DpValue a = lower_dp(e.args[0]);
                if (!a.is_poly) return field_only(e);
                DpValue v;
                v.is_poly = true;
                v.p = -a.p;
                return v;
            }
            case K::Mul: {
                DpValue a = lower_dp(e.args[0]), b = lower_dp(e.args[1]);
                if (!a.is_poly && !b.is_poly) return field_only(e);
                DpValue v;
                v.is_poly = true;
                v.p = a.as_poly() * b.as_poly();
                return v;
            }
            case K::Div: {
                DpValue a = lower_dp(e.args[0]), b = lower_dp(e.args[1]);
                if (b.is_poly)
                    lowering_fail("cannot divide by a differential polynomial", e);
                if (!a.is_poly) return field_only(e);
                DpValue v;
                v.is_poly = true;
                v.p = a.p.scaled(b.f.inverse());
                return v;
            }
            case K::Pow: {
                DpValue a = lower_dp(e.args[0]);
                if (!a.is_poly) return field_only(e);
                if (!is_integer(e.value) || sign_of(e.value) < 0)
                    lowering_fail(
                        "a power of Y needs a nonnegative integer exponent", e);
                DpValue v;
                v.is_poly = true;
                v.p = a.p.pow(static_cast<unsigned>(e.value.get_num().get_si()));
                return v;
            }
            default: return field_only(e);
        }
    } catch (const AlgebraError& err) {
        lowering_fail(err.what(), e);
    }
}

}  // namespace detail

inline SourceExpr parse_source(const std::string& text, bool allow_y = false,
                               unsigned max_order = 5) {
    return detail::Parser(text, allow_y, max_order).parse();
}

inline FieldElem parse_expr(const std::string& text) {
    return detail::lower_expr(parse_source(text));
}

inline DiffPoly parse_diffpoly(const std::string& text, unsigned max_order = 5) {
    return detail::lower_dp(parse_source(text, true, max_order)).as_poly();
}

}  // namespace logtower
