#pragma once

// Finite power series in a positive parameter with exact rational exponents
// and double coefficients. EpsSeries carries a tail marker: every order at or
// beyond the tail is unknown. The term-list helpers are shared with the Fermat
// little-oh polynomials.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace cgn {

enum class RingOp { add, sub, mul };

struct Term {
    Rational exponent;
    double coefficient;

    friend bool operator==(const Term&, const Term&) = default;
};

namespace detail {

inline bool cancelled(double sum, double scale)
{
    return sum == 0.0 || std::abs(sum) <= coefficient_tolerance * scale;
}

/// Exponents strictly below `bound` (or up to it when `inclusive`) survive.
struct Cutoff {
    Order bound = Order::infinity();
    bool inclusive = false;

    bool keeps(const Rational& e) const
    {
        if (bound.is_infinite())
            return true;
        return inclusive ? !(bound.value() < e) : e < bound.value();
    }
};

/// Sort, merge equal exponents, drop cancelled coefficients and cut.
inline std::vector<Term> canonical_terms(std::vector<Term> raw, const Cutoff& cut)
{
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        double sum = 0.0, scale = 0.0;
        for (; j < raw.size() && raw[j].exponent == raw[i].exponent; ++j) {
            sum += raw[j].coefficient;
            scale += std::abs(raw[j].coefficient);
        }
        if (!cancelled(sum, scale) && cut.keeps(raw[i].exponent))
            out.push_back({raw[i].exponent, sum});
        i = j;
    }
    return out;
}

inline std::vector<Term> add_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                                   double sign_b, const Cutoff& cut)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        Term t;
        if (j == b.size() || (i < a.size() && a[i].exponent < b[j].exponent)) {
            t = a[i++];
        } else if (i == a.size() || b[j].exponent < a[i].exponent) {
            t = {b[j].exponent, sign_b * b[j].coefficient};
            ++j;
        } else {
            double sum = a[i].coefficient + sign_b * b[j].coefficient;
            double scale = std::abs(a[i].coefficient) + std::abs(b[j].coefficient);
            t = {a[i].exponent, cancelled(sum, scale) ? 0.0 : sum};
            ++i;
            ++j;
        }
        if (t.coefficient != 0.0 && cut.keeps(t.exponent))
            out.push_back(t);
    }
    return out;
}

/// Product of canonical term lists. Exponents are mapped onto a common integer
/// grid so the accumulation is a dense array in the common case.
inline std::vector<Term> multiply_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                                        const Cutoff& cut)
{
    if (a.empty() || b.empty())
        return {};
    std::int64_t den = 1;
    for (const auto& t : a)
        den = lcm(den, t.exponent.denominator());
    for (const auto& t : b)
        den = lcm(den, t.exponent.denominator());
    if (cut.bound.is_finite())
        den = lcm(den, cut.bound.value().denominator());

    auto grid = [den](const Rational& e) { return e.numerator() * (den / e.denominator()); };
    std::vector<std::int64_t> ga(a.size()), gb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        ga[i] = grid(a[i].exponent);
    for (std::size_t j = 0; j < b.size(); ++j)
        gb[j] = grid(b[j].exponent);

    std::int64_t lo = ga.front() + gb.front();
    std::int64_t hi = ga.back() + gb.back();
    if (cut.bound.is_finite()) {
        std::int64_t cap = grid(cut.bound.value());
        hi = std::min(hi, cut.inclusive ? cap : cap - 1);
    }
    if (hi < lo)
        return {};

    std::vector<Term> out;
    auto emit = [&](std::int64_t g, double sum, double scale) {
        if (!cancelled(sum, scale))
            out.push_back({Rational(g, den), sum});
    };

    constexpr std::int64_t dense_limit = std::int64_t{1} << 22;
    if (hi - lo < dense_limit) {
        std::vector<double> sum(static_cast<std::size_t>(hi - lo + 1), 0.0);
        std::vector<double> scale(sum.size(), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::int64_t g = ga[i] + gb[j];
                if (g > hi)
                    break;
                double p = a[i].coefficient * b[j].coefficient;
                auto k = static_cast<std::size_t>(g - lo);
                sum[k] += p;
                scale[k] += std::abs(p);
            }
        }
        for (std::size_t k = 0; k < sum.size(); ++k)
            if (scale[k] != 0.0)
                emit(lo + static_cast<std::int64_t>(k), sum[k], scale[k]);
    } else {
        std::map<std::int64_t, std::pair<double, double>> acc;
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::int64_t g = ga[i] + gb[j];
                if (g > hi)
                    break;
                double p = a[i].coefficient * b[j].coefficient;
                auto& slot = acc[g];
                slot.first += p;
                slot.second += std::abs(p);
            }
        }
        for (const auto& [g, v] : acc)
            emit(g, v.first, v.second);
    }
    return out;
}

inline bool coefficients_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Coefficient-wise comparison over the union of exponents; missing terms count as 0.
inline bool terms_close(const std::vector<Term>& a, const std::vector<Term>& b, double tol)
{
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].exponent < b[j].exponent)) {
            if (!coefficients_close(a[i++].coefficient, 0.0, tol))
                return false;
        } else if (i == a.size() || b[j].exponent < a[i].exponent) {
            if (!coefficients_close(0.0, b[j++].coefficient, tol))
                return false;
        } else {
            if (!coefficients_close(a[i++].coefficient, b[j++].coefficient, tol))
                return false;
        }
    }
    return true;
}

inline std::string shortest(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Small-denominator rational p/q within 1e-15 relative of m > 0, if any.
inline bool small_rational(double m, std::int64_t& p, std::int64_t& q)
{
    constexpr std::int64_t max_den = 1000000;
    // continued-fraction convergents
    double x = m;
    std::int64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(x);
        if (a > 1e15)
            return false;
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        if (k2 > max_den)
            return false;
        h1 = h0;
        h0 = h2;
        k1 = k0;
        k0 = k2;
        if (std::abs(static_cast<double>(h0) / static_cast<double>(k0) - m) <= 1e-15 * m) {
            p = h0;
            q = k0;
            return true;
        }
        double frac = x - a;
        if (frac <= 0.0)
            return false;
        x = 1.0 / frac;
    }
    return false;
}

/// Positive magnitude as it appears in a literal: short decimals stay decimal,
/// long ones that are simple fractions print as (p/q).
inline std::string format_magnitude(double m)
{
    std::string s = shortest(m);
    if (s.size() <= 10)
        return s;
    std::int64_t p = 0, q = 1;
    if (small_rational(m, p, q))
        return q == 1 ? std::to_string(p) : "(" + std::to_string(p) + "/" + std::to_string(q) + ")";
    return s;
}

inline std::string format_power(std::string_view var, const Rational& e)
{
    std::string v(var);
    if (e == Rational(1))
        return v;
    if (is_integer(e) && e.numerator() >= 0)
        return v + "^" + std::to_string(e.numerator());
    return v + "^(" + to_string(e) + ")";
}

inline std::string format_terms(const std::vector<Term>& terms, const Order& tail, std::string_view var)
{
    std::string out;
    bool first = true;
    for (const auto& t : terms) {
        bool neg = t.coefficient < 0;
        double m = std::abs(t.coefficient);
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (t.exponent == Rational(0)) {
            out += format_magnitude(m);
        } else if (std::string c = format_magnitude(m); c == "1") {
            out += format_power(var, t.exponent);
        } else {
            out += c + "*" + format_power(var, t.exponent);
        }
    }
    if (tail.is_finite()) {
        out += first ? "" : " + ";
        out += "O(" + format_power(var, tail.value()) + ")";
        first = false;
    }
    return first ? std::string("0") : out;
}

} // namespace detail

/// Sign of a series as far as the known terms decide it.
struct SeriesSign {
    enum Kind { negative, zero, positive, unknown };
    Kind kind;
    Order blocking = Order::infinity(); ///< tail that hides the sign when unknown
};

class EpsSeries {
public:
    EpsSeries() = default;
    explicit EpsSeries(double c) : EpsSeries(std::vector<Term>{{Rational(0), c}}) {}
    explicit EpsSeries(std::vector<Term> raw, Order tail = Order::infinity()) : tail_(tail)
    {
        terms_ = detail::canonical_terms(std::move(raw), {tail_, false});
    }

    static EpsSeries monomial(double c, const Rational& e) { return EpsSeries({{e, c}}); }
    /// O(eps^tail) with nothing known below it.
    static EpsSeries unknown(const Rational& tail) { return EpsSeries({}, Order(tail)); }

    const std::vector<Term>& terms() const { return terms_; }
    const Order& tail() const { return tail_; }

    bool is_exact() const { return tail_.is_infinite(); }
    bool is_zero() const { return terms_.empty() && tail_.is_infinite(); }
    bool has_leading() const { return !terms_.empty(); }
    const Term& leading() const { return terms_.front(); }

    /// Least known exponent, or the tail when nothing is known (+inf for exact zero).
    Order lowest() const { return terms_.empty() ? tail_ : Order(terms_.front().exponent); }

    double coefficient(const Rational& e) const
    {
        for (const auto& t : terms_)
            if (t.exponent == e)
                return t.coefficient;
        return 0.0;
    }

    SeriesSign sign() const
    {
        if (!terms_.empty())
            return {terms_.front().coefficient < 0 ? SeriesSign::negative : SeriesSign::positive};
        if (tail_.is_infinite())
            return {SeriesSign::zero};
        return {SeriesSign::unknown, tail_};
    }

    EpsSeries truncated(const Order& q) const
    {
        EpsSeries out = *this;
        out.tail_ = min_order(tail_, q);
        out.terms_.erase(std::remove_if(out.terms_.begin(), out.terms_.end(),
                                        [&](const Term& t) { return !(Order(t.exponent) < out.tail_); }),
                         out.terms_.end());
        return out;
    }

    /// Multiply by c*eps^e.
    EpsSeries shifted(double c, const Rational& e) const
    {
        EpsSeries out;
        out.tail_ = tail_ + Order(e);
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_)
            out.terms_.push_back({t.exponent + e, t.coefficient * c});
        if (c == 0.0)
            return tail_.is_infinite() ? EpsSeries{} : unknown(out.tail_.value());
        return out;
    }

    /// Sum of the known terms at eps (the tail is ignored).
    double evaluate(double eps) const
    {
        double s = 0.0;
        for (const auto& t : terms_)
            s += t.coefficient * std::pow(eps, to_double(t.exponent));
        return s;
    }

    EpsSeries operator-() const { return shifted(-1.0, Rational(0)); }

    friend EpsSeries operator+(const EpsSeries& a, const EpsSeries& b) { return combine(a, b, 1.0); }
    friend EpsSeries operator-(const EpsSeries& a, const EpsSeries& b) { return combine(a, b, -1.0); }

    friend EpsSeries operator*(const EpsSeries& a, const EpsSeries& b)
    {
        // (A + O(Ta)) (B + O(Tb)) = AB + O(min(Ta + low(b), Tb + low(a)))
        Order tail = Order::infinity();
        if (b.tail_.is_finite())
            tail = min_order(tail, b.tail_ + a.lowest());
        if (a.tail_.is_finite())
            tail = min_order(tail, a.tail_ + b.lowest());
        EpsSeries out;
        out.tail_ = tail;
        out.terms_ = detail::multiply_terms(a.terms_, b.terms_, {tail, false});
        return out;
    }

    friend EpsSeries operator*(double c, const EpsSeries& a) { return a.shifted(c, Rational(0)); }

    /// Equal under the coefficient tolerance, with identical tails.
    friend bool operator==(const EpsSeries& a, const EpsSeries& b)
    {
        return a.tail_ == b.tail_ && detail::terms_close(a.terms_, b.terms_, coefficient_tolerance);
    }

    std::string to_string(std::string_view var = "eps") const
    {
        return detail::format_terms(terms_, tail_, var);
    }

private:
    static EpsSeries combine(const EpsSeries& a, const EpsSeries& b, double sign)
    {
        EpsSeries out;
        out.tail_ = min_order(a.tail_, b.tail_);
        out.terms_ = detail::add_terms(a.terms_, b.terms_, sign, {out.tail_, false});
        return out;
    }

    std::vector<Term> terms_;
    Order tail_ = Order::infinity();
};

/// Known coefficients agree within `tol` (relative to max(1,|c|)) below the smaller tail.
inline bool agree_below_tail(const EpsSeries& a, const EpsSeries& b, double tol)
{
    Order cut = min_order(a.tail(), b.tail());
    return detail::terms_close(a.truncated(cut).terms(), b.truncated(cut).terms(), tol);
}

} // namespace cgn
