#pragma once

// Elementary functions on truncated series: Taylor coefficients about a real
// point and their composition with an infinitesimal increment (Taylor mode).

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "series.hpp"

namespace cgn {

enum class Fn { sin, cos, exp, log, sqrt };

inline std::string_view name(Fn f)
{
    switch (f) {
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::exp: return "exp";
    case Fn::log: return "log";
    case Fn::sqrt: return "sqrt";
    }
    return "?";
}

/// s^e for real s and rational e; negative bases need an odd denominator.
inline double real_power(double s, const Rational& e)
{
    if (s > 0.0)
        return std::pow(s, to_double(e));
    if (s == 0.0) {
        if (e > Rational(0))
            return 0.0;
        if (e == Rational(0))
            return 1.0;
        throw DomainError("non-positive power of zero");
    }
    if (e.denominator() % 2 == 0)
        throw DomainError("even root of a negative number");
    double m = std::pow(-s, to_double(e));
    return (e.numerator() % 2 != 0) ? -m : m;
}

/// c_k = binom(alpha, k) s^(alpha - k), k = 0..order: Taylor coefficients of y^alpha at s.
inline std::vector<double> power_coefficients(double s, const Rational& alpha, int order)
{
    bool nonneg_int = is_integer(alpha) && alpha >= Rational(0);
    if (!nonneg_int && s == 0.0)
        throw DomainError("power " + to_string(alpha) + " is not smooth at 0");
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    double a = to_double(alpha);
    c[0] = real_power(s, alpha);
    double binom = 1.0;
    for (int k = 1; k <= order; ++k) {
        binom *= (a - (k - 1)) / k;
        if (binom == 0.0)
            break;
        c[static_cast<std::size_t>(k)] = binom * real_power(s, alpha - Rational(k));
    }
    return c;
}

/// c_k = f^(k)(s) / k!, k = 0..order.
inline std::vector<double> taylor_coefficients(Fn f, double s, int order)
{
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    switch (f) {
    case Fn::exp: {
        double e = std::exp(s);
        double fact = 1.0;
        for (int k = 0; k <= order; ++k) {
            if (k > 0)
                fact *= k;
            c[static_cast<std::size_t>(k)] = e / fact;
        }
        break;
    }
    case Fn::sin:
    case Fn::cos: {
        double sn = std::sin(s), cs = std::cos(s);
        // sin^2 + cos^2 = 1 bounds the rounding noise of either value
        if (std::abs(sn) < 1e-15)
            sn = 0.0;
        if (std::abs(cs) < 1e-15)
            cs = 0.0;
        // derivative cycle starting at the function value
        double cyc[4] = {sn, cs, -sn, -cs};
        int start = f == Fn::sin ? 0 : 1;
        double fact = 1.0;
        for (int k = 0; k <= order; ++k) {
            if (k > 0)
                fact *= k;
            c[static_cast<std::size_t>(k)] = cyc[(start + k) % 4] / fact;
        }
        break;
    }
    case Fn::log: {
        if (!(s > 0.0))
            throw DomainError("log of a non-positive number");
        c[0] = std::log(s);
        double p = 1.0;
        for (int k = 1; k <= order; ++k) {
            p /= s;
            c[static_cast<std::size_t>(k)] = ((k % 2) ? 1.0 : -1.0) * p / k;
        }
        break;
    }
    case Fn::sqrt:
        if (!(s > 0.0))
            throw DomainError("sqrt is not smooth at a non-positive number");
        return power_coefficients(s, Rational(1, 2), order);
    }
    return c;
}

inline double evaluate(Fn f, double y)
{
    switch (f) {
    case Fn::sin: return std::sin(y);
    case Fn::cos: return std::cos(y);
    case Fn::exp: return std::exp(y);
    case Fn::log:
        if (!(y > 0.0))
            throw DomainError("log of a non-positive number");
        return std::log(y);
    case Fn::sqrt:
        if (y < 0.0)
            throw DomainError("sqrt of a negative number");
        return std::sqrt(y);
    }
    return 0.0;
}

/// Horner sum of c_k delta^k with every partial result cut at `cutoff`.
inline EpsSeries horner(const std::vector<double>& c, const EpsSeries& delta, const Order& cutoff)
{
    EpsSeries r(c.back());
    for (std::size_t k = c.size() - 1; k-- > 0;)
        r = (r * delta).truncated(cutoff) + EpsSeries(c[k]);
    return r.truncated(cutoff);
}

/// Number of Taylor orders needed so that (order+1) * low(delta) reaches `cutoff`.
inline int taylor_order(const EpsSeries& delta, const Order& cutoff)
{
    Order low = delta.lowest();
    if (low.is_infinite() || cutoff.is_infinite())
        return 0;
    if (!(Rational(0) < low.value()))
        throw std::logic_error("taylor_order: increment is not infinitesimal");
    Rational ratio = cutoff.value() / low.value();
    return static_cast<int>(std::max<std::int64_t>(0, ceil_of(ratio) - 1));
}

namespace detail {

/// Increment laid out on the grid eps^(k/den), k = 0..size-1, below min(cutoff, tail).
/// Recurrences on this grid never form powers of the increment, so a coefficient
/// is accumulated from terms of its own magnitude rather than from cancelling
/// binomial sums.
struct DenseIncrement {
    std::int64_t den = 1;
    std::int64_t size = 0;
    Order tail = Order::infinity();
    std::vector<std::pair<std::int64_t, double>> nonzero; ///< (k, a_k), k >= 1

    Rational exponent(std::int64_t k) const { return Rational(k, den); }
};

inline constexpr std::int64_t dense_grid_limit = 4096;

inline std::optional<DenseIncrement> dense_increment(const EpsSeries& delta, const Order& cutoff)
{
    DenseIncrement g;
    g.tail = min_order(cutoff, delta.tail());
    if (g.tail.is_infinite())
        return std::nullopt;
    for (const auto& t : delta.terms())
        g.den = lcm(g.den, t.exponent.denominator());
    g.den = lcm(g.den, g.tail.value().denominator());
    g.size = std::max<std::int64_t>(0, g.tail.value().numerator() * (g.den / g.tail.value().denominator()));
    if (g.size > dense_grid_limit)
        return std::nullopt;
    for (const auto& t : delta.terms()) {
        std::int64_t k = t.exponent.numerator() * (g.den / t.exponent.denominator());
        if (k < g.size)
            g.nonzero.push_back({k, t.coefficient});
    }
    return g;
}

inline EpsSeries from_dense(const DenseIncrement& g, const std::vector<double>& y)
{
    std::vector<Term> terms;
    for (std::int64_t k = 0; k < g.size; ++k)
        if (y[static_cast<std::size_t>(k)] != 0.0)
            terms.push_back({g.exponent(k), y[static_cast<std::size_t>(k)]});
    return EpsSeries(std::move(terms), g.tail);
}

/// y = (a0 + delta)^alpha with a0 != 0, from a y' = alpha a' y.
inline std::vector<double> dense_power(const DenseIncrement& g, double a0, const Rational& alpha)
{
    std::vector<double> y(static_cast<std::size_t>(std::max<std::int64_t>(g.size, 1)), 0.0);
    double al = to_double(alpha);
    y[0] = real_power(a0, alpha);
    for (std::int64_t k = 1; k < g.size; ++k) {
        double acc = 0.0;
        for (const auto& [j, aj] : g.nonzero) {
            if (j > k)
                break;
            acc += (al * static_cast<double>(j) - static_cast<double>(k - j)) * aj * y[static_cast<std::size_t>(k - j)];
        }
        y[static_cast<std::size_t>(k)] = acc / (static_cast<double>(k) * a0);
    }
    return y;
}

/// f(a0 + delta) for f in {sin, cos, exp, log} by the usual Taylor-mode recurrences.
inline std::vector<double> dense_apply(Fn f, const DenseIncrement& g, double a0)
{
    auto n = static_cast<std::size_t>(std::max<std::int64_t>(g.size, 1));
    std::vector<double> y(n, 0.0), z(n, 0.0);
    switch (f) {
    case Fn::exp:
        y[0] = std::exp(a0);
        for (std::int64_t k = 1; k < g.size; ++k) {
            double acc = 0.0;
            for (const auto& [j, aj] : g.nonzero) {
                if (j > k)
                    break;
                acc += static_cast<double>(j) * aj * y[static_cast<std::size_t>(k - j)];
            }
            y[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
        }
        return y;
    case Fn::log: {
        y[0] = std::log(a0);
        // a y' = a': a0 k y_k = k a_k - sum_{j>=1} (k-j) a_j y_{k-j}
        std::vector<double> a(n, 0.0);
        for (const auto& [j, aj] : g.nonzero)
            a[static_cast<std::size_t>(j)] = aj;
        for (std::int64_t k = 1; k < g.size; ++k) {
            double acc = static_cast<double>(k) * a[static_cast<std::size_t>(k)];
            for (const auto& [j, aj] : g.nonzero) {
                if (j >= k)
                    break;
                acc -= static_cast<double>(k - j) * aj * y[static_cast<std::size_t>(k - j)];
            }
            y[static_cast<std::size_t>(k)] = acc / (static_cast<double>(k) * a0);
        }
        return y;
    }
    case Fn::sin:
    case Fn::cos:
        y[0] = std::sin(a0);
        z[0] = std::cos(a0);
        for (std::int64_t k = 1; k < g.size; ++k) {
            double s = 0.0, c = 0.0;
            for (const auto& [j, aj] : g.nonzero) {
                if (j > k)
                    break;
                s += static_cast<double>(j) * aj * z[static_cast<std::size_t>(k - j)];
                c -= static_cast<double>(j) * aj * y[static_cast<std::size_t>(k - j)];
            }
            y[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
            z[static_cast<std::size_t>(k)] = c / static_cast<double>(k);
        }
        return f == Fn::sin ? y : z;
    case Fn::sqrt: break;
    }
    throw std::logic_error("dense_apply: unsupported function");
}

} // namespace detail

/// Negative-exponent part, exponent-0 coefficient and positive-exponent part.
struct SeriesSplit {
    EpsSeries negative;
    double standard = 0.0;
    EpsSeries infinitesimal;
};

inline SeriesSplit split(const EpsSeries& x)
{
    if (x.tail().is_finite() && !(Rational(0) < x.tail().value()))
        throw UnknownSign("standard part", x.tail());
    std::vector<Term> neg, pos;
    SeriesSplit out;
    for (const auto& t : x.terms()) {
        if (t.exponent < Rational(0))
            neg.push_back(t);
        else if (t.exponent == Rational(0))
            out.standard = t.coefficient;
        else
            pos.push_back(t);
    }
    out.negative = EpsSeries(std::move(neg));
    out.infinitesimal = EpsSeries(std::move(pos), x.tail());
    return out;
}

inline EpsSeries power(const EpsSeries& x, const Rational& alpha, const Config& cfg)
{
    if (is_integer(alpha) && alpha >= Rational(0)) {
        EpsSeries result(1.0), base = x;
        for (std::int64_t n = alpha.numerator(); n > 0; n >>= 1) {
            if (n & 1)
                result = result * base;
            if (n > 1)
                base = base * base;
        }
        return result;
    }
    if (!x.has_leading()) {
        if (x.is_zero()) {
            if (alpha > Rational(0))
                return EpsSeries{};
            throw NotInvertible("zero has no negative powers");
        }
        if (alpha < Rational(0))
            throw NotInvertible("leading term hidden behind O(eps^" + to_string(x.tail()) + ")");
        throw UnknownSign("leading term", x.tail());
    }
    const Term lead = x.leading();
    if (lead.coefficient < 0.0 && alpha.denominator() % 2 == 0)
        throw DomainError("even root of a negative leading coefficient");
    double prefactor = real_power(lead.coefficient, alpha);
    Rational shift = lead.exponent * alpha;
    EpsSeries u = x.shifted(1.0 / lead.coefficient, -lead.exponent) - EpsSeries(1.0);
    if (u.is_zero())
        return EpsSeries::monomial(prefactor, shift);
    Order cutoff = Order(cfg.tail_order) - shift;
    if (auto g = detail::dense_increment(u, cutoff))
        return detail::from_dense(*g, detail::dense_power(*g, 1.0, alpha)).shifted(prefactor, shift);
    int order = taylor_order(u, cutoff);
    return horner(power_coefficients(1.0, alpha, order), u, cutoff).shifted(prefactor, shift);
}

inline EpsSeries invert(const EpsSeries& x, const Config& cfg)
{
    return power(x, Rational(-1), cfg);
}

inline EpsSeries apply(Fn f, const EpsSeries& x, const Config& cfg)
{
    if (f == Fn::sqrt)
        return power(x, Rational(1, 2), cfg);
    Order cutoff(cfg.tail_order);
    if (f == Fn::log) {
        if (!x.has_leading()) {
            if (x.is_zero())
                throw DomainError("log of zero");
            throw UnknownSign("log argument", x.tail());
        }
        if (x.leading().exponent != Rational(0))
            throw DomainError("log of an argument that is infinitesimal or infinite");
    }
    SeriesSplit parts = split(x);
    if (!parts.negative.is_zero()) {
        if (f == Fn::exp) {
            // exp(-c eps^-a + ...) is smaller than every power of eps: zero in the quotient
            if (parts.negative.leading().coefficient < 0.0)
                return EpsSeries{};
            throw DomainError("exp of a positively infinite argument is not moderate");
        }
        throw DomainError(std::string(name(f)) + " of an infinite argument");
    }
    if (parts.infinitesimal.is_zero())
        return EpsSeries(evaluate(f, parts.standard));
    if (f == Fn::log)
        evaluate(f, parts.standard);
    if (auto g = detail::dense_increment(parts.infinitesimal, cutoff))
        return detail::from_dense(*g, detail::dense_apply(f, *g, parts.standard));
    int order = taylor_order(parts.infinitesimal, cutoff);
    auto c = taylor_coefficients(f, parts.standard, order);
    return horner(c, parts.infinitesimal, cutoff);
}

} // namespace cgn
