#pragma once

// Fermat reals: little-oh polynomials r + sum a_i t^(e_i) with 0 < e_i <= 1,
// everything of order o(t) discarded.

#include <string>
#include <utility>
#include <vector>

#include "elementary.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "series.hpp"

namespace cgn {

class LittleOhPoly {
public:
    LittleOhPoly() = default;
    explicit LittleOhPoly(double r) : LittleOhPoly(std::vector<Term>{{Rational(0), r}}) {}

    /// Canonical form of an arbitrary list of (exponent >= 0, coefficient).
    explicit LittleOhPoly(std::vector<Term> raw)
    {
        for (const auto& t : raw)
            if (t.exponent < Rational(0))
                throw DomainError("negative exponent " + cgn::to_string(t.exponent) +
                                  " in a little-oh polynomial");
        terms_ = detail::canonical_terms(std::move(raw), cutoff());
    }

    static LittleOhPoly monomial(double c, const Rational& e) { return LittleOhPoly({{e, c}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    double standard() const
    {
        return !terms_.empty() && terms_.front().exponent == Rational(0) ? terms_.front().coefficient : 0.0;
    }

    LittleOhPoly infinitesimal() const
    {
        LittleOhPoly out;
        for (const auto& t : terms_)
            if (t.exponent > Rational(0))
                out.terms_.push_back(t);
        return out;
    }

    /// Least positive exponent, +inf for a standard real.
    Order least_positive_exponent() const
    {
        for (const auto& t : terms_)
            if (t.exponent > Rational(0))
                return Order(t.exponent);
        return Order::infinity();
    }

    LittleOhPoly operator-() const
    {
        LittleOhPoly out = *this;
        for (auto& t : out.terms_)
            t.coefficient = -t.coefficient;
        return out;
    }

    friend LittleOhPoly operator+(const LittleOhPoly& a, const LittleOhPoly& b)
    {
        return from_canonical(detail::add_terms(a.terms_, b.terms_, 1.0, cutoff()));
    }
    friend LittleOhPoly operator-(const LittleOhPoly& a, const LittleOhPoly& b)
    {
        return from_canonical(detail::add_terms(a.terms_, b.terms_, -1.0, cutoff()));
    }
    friend LittleOhPoly operator*(const LittleOhPoly& a, const LittleOhPoly& b)
    {
        return from_canonical(detail::multiply_terms(a.terms_, b.terms_, cutoff()));
    }
    friend LittleOhPoly operator*(double c, const LittleOhPoly& a)
    {
        return LittleOhPoly(c) * a;
    }

    friend bool operator==(const LittleOhPoly& a, const LittleOhPoly& b)
    {
        return detail::terms_close(a.terms_, b.terms_, coefficient_tolerance);
    }

    std::string to_string() const { return detail::format_terms(terms_, Order::infinity(), "t"); }

private:
    static detail::Cutoff cutoff() { return {Order(Rational(1)), true}; }

    static LittleOhPoly from_canonical(std::vector<Term> terms)
    {
        LittleOhPoly out;
        out.terms_ = std::move(terms);
        return out;
    }

    std::vector<Term> terms_;
};

inline LittleOhPoly fr_normalize(std::vector<Term> raw)
{
    return LittleOhPoly(std::move(raw));
}

inline LittleOhPoly fr_ring_op(RingOp op, const LittleOhPoly& a, const LittleOhPoly& b)
{
    switch (op) {
    case RingOp::add: return a + b;
    case RingOp::sub: return a - b;
    case RingOp::mul: return a * b;
    }
    return {};
}

/// Total order: b - a is zero or its least term is positive.
inline bool fr_leq(const LittleOhPoly& a, const LittleOhPoly& b)
{
    LittleOhPoly d = b - a;
    return d.is_zero() || d.terms().front().coefficient > 0.0;
}

/// h is in D: zero, or every exponent exceeds 1/2 (so h*h vanishes).
inline bool fr_is_first_order(const LittleOhPoly& h)
{
    for (const auto& t : h.terms())
        if (!(t.exponent > Rational(1, 2)))
            return false;
    return true;
}

inline std::pair<double, LittleOhPoly> fr_decompose(const LittleOhPoly& x)
{
    return {x.standard(), x.infinitesimal()};
}

namespace detail {

/// sum c_k delta^k; powers of delta beyond floor(1/a_min) vanish anyway.
inline LittleOhPoly fermat_horner(const std::vector<double>& c, const LittleOhPoly& delta)
{
    LittleOhPoly r(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;)
        r = r * delta + LittleOhPoly(c[k]);
    return r;
}

/// Nilpotency order k_max = floor(1/a_min) of the infinitesimal part.
inline int nilpotency_order(const LittleOhPoly& delta)
{
    Order a = delta.least_positive_exponent();
    if (a.is_infinite())
        return 0;
    return static_cast<int>(floor_of(Rational(1) / a.value()));
}

} // namespace detail

/// Evaluation of an x-only expression over the Fermat reals.
struct FermatOps {
    using value_type = LittleOhPoly;
    LittleOhPoly x;

    LittleOhPoly constant(double v) const { return LittleOhPoly(v); }
    LittleOhPoly variable() const { return x; }
    LittleOhPoly eps() const { throw DomainError("eps is not a Fermat-real variable"); }
    LittleOhPoly add(const LittleOhPoly& a, const LittleOhPoly& b) const { return a + b; }
    LittleOhPoly sub(const LittleOhPoly& a, const LittleOhPoly& b) const { return a - b; }
    LittleOhPoly mul(const LittleOhPoly& a, const LittleOhPoly& b) const { return a * b; }
    LittleOhPoly div(const LittleOhPoly& a, const LittleOhPoly& b) const
    {
        if (b.standard() == 0.0)
            throw DomainError("division by a Fermat real with zero standard part");
        return a * pow(b, Rational(-1));
    }
    LittleOhPoly neg(const LittleOhPoly& a) const { return -a; }
    LittleOhPoly pow(const LittleOhPoly& a, const Rational& e) const
    {
        if (is_integer(e) && e >= Rational(0)) {
            LittleOhPoly r(1.0);
            for (std::int64_t n = e.numerator(); n > 0; --n)
                r = r * a;
            return r;
        }
        LittleOhPoly delta = a.infinitesimal();
        return detail::fermat_horner(power_coefficients(a.standard(), e, detail::nilpotency_order(delta)),
                                     delta);
    }
    LittleOhPoly apply(Fn f, const LittleOhPoly& a) const
    {
        LittleOhPoly delta = a.infinitesimal();
        return detail::fermat_horner(taylor_coefficients(f, a.standard(), detail::nilpotency_order(delta)),
                                     delta);
    }
};

/// The extension of f to Fermat reals: Taylor expansion about st(x) cut at nilpotency.
inline LittleOhPoly fr_extend(const Expr& f, const LittleOhPoly& x)
{
    if (f.depends_on_eps())
        throw DomainError("Fermat extension needs a function of x alone");
    return evaluate(f, FermatOps{x});
}

} // namespace cgn
