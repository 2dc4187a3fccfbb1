#pragma once

// Expression trees in the variables x and eps, symbolic differentiation in x,
// and a generic evaluator parameterized by the value algebra.

#include <memory>
#include <string>
#include <utility>

#include "elementary.hpp"
#include "errors.hpp"
#include "rational.hpp"
#include "series.hpp"

namespace cgn {

enum class Op { constant, x, eps, add, sub, mul, div, neg, pow, fn };

class Expr {
    struct Node {
        Op op = Op::constant;
        double value = 0.0;
        Rational exponent{1};
        Fn fn = Fn::sin;
        std::shared_ptr<const Node> lhs, rhs;
    };

public:
    Expr() : Expr(constant(0.0)) {}

    static Expr constant(double v) { return Expr(Node{Op::constant, v, Rational(1), Fn::sin, {}, {}}); }
    static Expr x() { return Expr(Node{Op::x, 0.0, Rational(1), Fn::sin, {}, {}}); }
    static Expr eps() { return Expr(Node{Op::eps, 0.0, Rational(1), Fn::sin, {}, {}}); }

    /// Tree nodes as written; no simplification other than folding a negated constant.
    static Expr binary(Op op, const Expr& a, const Expr& b)
    {
        return Expr(Node{op, 0.0, Rational(1), Fn::sin, a.node_, b.node_});
    }
    static Expr negate(const Expr& a)
    {
        if (a.op() == Op::constant)
            return constant(-a.value());
        return Expr(Node{Op::neg, 0.0, Rational(1), Fn::sin, a.node_, {}});
    }
    static Expr power(const Expr& a, const Rational& e)
    {
        return Expr(Node{Op::pow, 0.0, e, Fn::sin, a.node_, {}});
    }
    static Expr call(Fn f, const Expr& a) { return Expr(Node{Op::fn, 0.0, Rational(1), f, a.node_, {}}); }

    Op op() const { return node_->op; }
    double value() const { return node_->value; }
    const Rational& exponent() const { return node_->exponent; }
    Fn fn() const { return node_->fn; }
    Expr lhs() const { return Expr(node_->lhs); }
    Expr rhs() const { return Expr(node_->rhs); }

    bool is_constant(double v) const { return op() == Op::constant && value() == v; }

    bool depends_on_eps() const
    {
        switch (op()) {
        case Op::eps: return true;
        case Op::constant:
        case Op::x: return false;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div: return lhs().depends_on_eps() || rhs().depends_on_eps();
        default: return lhs().depends_on_eps();
        }
    }

    std::string to_string() const { return print(*this, 0); }

    friend bool operator==(const Expr& a, const Expr& b)
    {
        if (a.node_ == b.node_)
            return true;
        if (a.op() != b.op())
            return false;
        switch (a.op()) {
        case Op::constant: return a.value() == b.value();
        case Op::x:
        case Op::eps: return true;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
        case Op::neg: return a.lhs() == b.lhs();
        case Op::pow: return a.exponent() == b.exponent() && a.lhs() == b.lhs();
        case Op::fn: return a.fn() == b.fn() && a.lhs() == b.lhs();
        }
        return false;
    }

    friend Expr operator+(const Expr& a, const Expr& b) { return binary(Op::add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(Op::sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(Op::mul, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(Op::div, a, b); }
    Expr operator-() const { return negate(*this); }

private:
    explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    // add/sub 1, mul/div 2, unary minus 3, power 4, atoms 5
    static int precedence(const Expr& e)
    {
        switch (e.op()) {
        case Op::add:
        case Op::sub: return 1;
        case Op::mul:
        case Op::div: return 2;
        case Op::neg: return 3;
        case Op::pow: return 4;
        default: return 5;
        }
    }

    static std::string print(const Expr& e, int min_prec)
    {
        std::string s;
        switch (e.op()) {
        case Op::constant:
            s = e.value() < 0 ? "(-" + detail::shortest(-e.value()) + ")" : detail::shortest(e.value());
            break;
        case Op::x: s = "x"; break;
        case Op::eps: s = "eps"; break;
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div: {
            static const char* sym[] = {"", "", "", " + ", " - ", " * ", " / "};
            int p = precedence(e);
            s = print(e.lhs(), p) + sym[static_cast<int>(e.op())] + print(e.rhs(), p + 1);
            break;
        }
        case Op::neg: s = "-" + print(e.lhs(), 4); break;
        case Op::pow: {
            const Rational& q = e.exponent();
            std::string ex = (is_integer(q) && q.numerator() >= 0) ? cgn::to_string(q)
                                                                    : "(" + cgn::to_string(q) + ")";
            s = print(e.lhs(), 5) + "^" + ex;
            break;
        }
        case Op::fn: s = std::string(name(e.fn())) + "(" + print(e.lhs(), 0) + ")"; break;
        }
        return precedence(e) < min_prec ? "(" + s + ")" : s;
    }

    std::shared_ptr<const Node> node_;
};

inline Expr apply(Fn f, const Expr& a)
{
    return Expr::call(f, a);
}

inline Expr pow(const Expr& a, const Rational& e)
{
    return Expr::power(a, e);
}

/// Evaluates `e` bottom-up in the algebra described by `ops`.
template <class Ops>
typename Ops::value_type evaluate(const Expr& e, const Ops& ops)
{
    switch (e.op()) {
    case Op::constant: return ops.constant(e.value());
    case Op::x: return ops.variable();
    case Op::eps: return ops.eps();
    case Op::add: return ops.add(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Op::sub: return ops.sub(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Op::mul: return ops.mul(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Op::div: return ops.div(evaluate(e.lhs(), ops), evaluate(e.rhs(), ops));
    case Op::neg: return ops.neg(evaluate(e.lhs(), ops));
    case Op::pow: return ops.pow(evaluate(e.lhs(), ops), e.exponent());
    case Op::fn: return ops.apply(e.fn(), evaluate(e.lhs(), ops));
    }
    throw std::logic_error("evaluate: bad node");
}

/// Plain double evaluation at fixed (x, eps).
struct RealOps {
    using value_type = double;
    double x0;
    double eps0;

    double constant(double v) const { return v; }
    double variable() const { return x0; }
    double eps() const { return eps0; }
    double add(double a, double b) const { return a + b; }
    double sub(double a, double b) const { return a - b; }
    double mul(double a, double b) const { return a * b; }
    double div(double a, double b) const
    {
        if (b == 0.0)
            throw DomainError("division by zero");
        return a / b;
    }
    double neg(double a) const { return -a; }
    double pow(double a, const Rational& e) const { return real_power(a, e); }
    double apply(Fn f, double a) const { return cgn::evaluate(f, a); }
};

/// Taylor-mode evaluation: x and eps are series, functions act through their
/// Taylor expansion about the standard part of the argument. With eps_scale = l
/// the series variable is eta = eps / l.
struct SeriesOps {
    using value_type = EpsSeries;
    EpsSeries x;
    Config config;
    double eps_scale = 1.0;

    EpsSeries constant(double v) const { return EpsSeries(v); }
    EpsSeries variable() const { return x; }
    EpsSeries eps() const { return EpsSeries::monomial(eps_scale, Rational(1)); }
    EpsSeries add(const EpsSeries& a, const EpsSeries& b) const { return a + b; }
    EpsSeries sub(const EpsSeries& a, const EpsSeries& b) const { return a - b; }
    EpsSeries mul(const EpsSeries& a, const EpsSeries& b) const { return a * b; }
    EpsSeries div(const EpsSeries& a, const EpsSeries& b) const { return a * cgn::invert(b, config); }
    EpsSeries neg(const EpsSeries& a) const { return -a; }
    EpsSeries pow(const EpsSeries& a, const Rational& e) const { return cgn::power(a, e, config); }
    EpsSeries apply(Fn f, const EpsSeries& a) const { return cgn::apply(f, a, config); }
};

inline double eval_real(const Expr& e, double eps0, double x0)
{
    return evaluate(e, RealOps{x0, eps0});
}

namespace detail {

inline Expr s_neg(const Expr& a)
{
    if (a.op() == Op::neg)
        return a.lhs();
    return Expr::negate(a);
}

inline Expr s_add(const Expr& a, const Expr& b)
{
    if (a.is_constant(0.0))
        return b;
    if (b.is_constant(0.0))
        return a;
    if (a.op() == Op::constant && b.op() == Op::constant)
        return Expr::constant(a.value() + b.value());
    return a + b;
}

inline Expr s_sub(const Expr& a, const Expr& b)
{
    if (b.is_constant(0.0))
        return a;
    if (a.is_constant(0.0))
        return s_neg(b);
    if (a.op() == Op::constant && b.op() == Op::constant)
        return Expr::constant(a.value() - b.value());
    return a - b;
}

inline Expr s_mul(const Expr& a, const Expr& b)
{
    if (a.is_constant(0.0) || b.is_constant(0.0))
        return Expr::constant(0.0);
    if (a.is_constant(1.0))
        return b;
    if (b.is_constant(1.0))
        return a;
    if (a.is_constant(-1.0))
        return s_neg(b);
    if (b.is_constant(-1.0))
        return s_neg(a);
    if (a.op() == Op::constant && b.op() == Op::constant)
        return Expr::constant(a.value() * b.value());
    return a * b;
}

inline Expr s_div(const Expr& a, const Expr& b)
{
    if (a.is_constant(0.0))
        return a;
    if (b.is_constant(1.0))
        return a;
    if (a.op() == Op::constant && b.op() == Op::constant && b.value() != 0.0)
        return Expr::constant(a.value() / b.value());
    return a / b;
}

inline Expr s_pow(const Expr& a, const Rational& e)
{
    if (e == Rational(0))
        return Expr::constant(1.0);
    if (e == Rational(1))
        return a;
    if (a.op() == Op::constant)
        return Expr::constant(real_power(a.value(), e));
    return Expr::power(a, e);
}

inline Expr d_dx(const Expr& e)
{
    switch (e.op()) {
    case Op::constant:
    case Op::eps: return Expr::constant(0.0);
    case Op::x: return Expr::constant(1.0);
    case Op::add: return s_add(d_dx(e.lhs()), d_dx(e.rhs()));
    case Op::sub: return s_sub(d_dx(e.lhs()), d_dx(e.rhs()));
    case Op::mul: return s_add(s_mul(d_dx(e.lhs()), e.rhs()), s_mul(e.lhs(), d_dx(e.rhs())));
    case Op::div:
        return s_sub(s_div(d_dx(e.lhs()), e.rhs()),
                     s_div(s_mul(e.lhs(), d_dx(e.rhs())), s_pow(e.rhs(), Rational(2))));
    case Op::neg: return s_neg(d_dx(e.lhs()));
    case Op::pow: {
        const Rational& q = e.exponent();
        return s_mul(s_mul(Expr::constant(to_double(q)), s_pow(e.lhs(), q - Rational(1))), d_dx(e.lhs()));
    }
    case Op::fn: {
        Expr a = e.lhs();
        Expr da = d_dx(a);
        switch (e.fn()) {
        case Fn::sin: return s_mul(apply(Fn::cos, a), da);
        case Fn::cos: return s_mul(s_neg(apply(Fn::sin, a)), da);
        case Fn::exp: return s_mul(e, da);
        case Fn::log: return s_div(da, a);
        case Fn::sqrt: return s_div(da, s_mul(Expr::constant(2.0), e));
        }
    }
    }
    throw std::logic_error("derivative: bad node");
}

} // namespace detail

/// Symbolic derivative in x of the given order (order 0 returns `e`).
inline Expr derivative(const Expr& e, int order = 1)
{
    Expr out = e;
    for (int i = 0; i < order; ++i)
        out = detail::d_dx(out);
    return out;
}

} // namespace cgn
