#pragma once

// Adaptive Gauss-Legendre quadrature on [a,b] for real- and series-valued integrands.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "series.hpp"

namespace cgn {

namespace detail {

template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre()
    {
        for (int i = 0; i < N; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            nodes[static_cast<std::size_t>(i)] = x;
            weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre<10>& gl10()
{
    static const GaussLegendre<10> rule;
    return rule;
}

template <class T, class F>
T gl_panel(F& f, double a, double b)
{
    const auto& r = gl10();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T sum{};
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        sum = sum + (r.weights[i] * half) * f(mid + half * r.nodes[i]);
    return sum;
}

template <class F>
double adaptive(F& f, double a, double b, double whole, double tol, int depth, const Config& cfg)
{
    double mid = 0.5 * (a + b);
    double left = gl_panel<double>(f, a, mid);
    double right = gl_panel<double>(f, mid, b);
    double both = left + right;
    if (std::abs(both - whole) <= tol)
        return both;
    if (depth >= cfg.quadrature_max_depth)
        throw NumericError("quadrature did not converge");
    return adaptive(f, a, mid, left, 0.5 * tol, depth + 1, cfg) + adaptive(f, mid, b, right, 0.5 * tol, depth + 1, cfg);
}

/// Largest coefficient difference, used as the error of a series-valued panel.
inline double series_error(const EpsSeries& s)
{
    double m = 0.0;
    for (const auto& t : s.terms())
        m = std::max(m, std::abs(t.coefficient));
    return m;
}

template <class F>
EpsSeries adaptive_series(F& f, double a, double b, const EpsSeries& whole, double tol, int depth,
                          const Config& cfg)
{
    double mid = 0.5 * (a + b);
    EpsSeries left = gl_panel<EpsSeries>(f, a, mid);
    EpsSeries right = gl_panel<EpsSeries>(f, mid, b);
    EpsSeries both = left + right;
    if (series_error(both - whole) <= tol)
        return both;
    if (depth >= cfg.quadrature_max_depth)
        throw NumericError("quadrature did not converge");
    return adaptive_series(f, a, mid, left, 0.5 * tol, depth + 1, cfg) +
           adaptive_series(f, mid, b, right, 0.5 * tol, depth + 1, cfg);
}

/// n-point Gauss-Legendre nodes and weights on [-1,1], exact for degree 2n-1.
/// Newton iteration and weights run in long double, then round once.
inline const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n)
{
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::vector<double> nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
    auto legendre = [n](long double x) {
        long double p0 = 1.0L, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0L)};
    };
    for (int i = 0; i < n; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        for (int iter = 0; iter < 100; ++iter) {
            auto [p, dp] = legendre(x);
            long double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-19L)
                break;
        }
        long double dp = legendre(x).second;
        nodes[static_cast<std::size_t>(i)] = static_cast<double>(x);
        weights[static_cast<std::size_t>(i)] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    }
    return cache.emplace(n, std::pair{std::move(nodes), std::move(weights)}).first->second;
}

} // namespace detail

/// Integral of f over [a,b]; tolerance relative to max(1, |integral|).
template <class F>
double integrate(F f, double a, double b, const Config& cfg = {})
{
    double whole = detail::gl_panel<double>(f, a, b);
    double tol = cfg.quadrature_tolerance * std::max(1.0, std::abs(whole));
    return detail::adaptive(f, a, b, whole, tol, 0, cfg);
}

/// Coefficientwise integral of a series-valued integrand.
template <class F>
EpsSeries integrate_series(F f, double a, double b, const Config& cfg = {})
{
    EpsSeries whole = detail::gl_panel<EpsSeries>(f, a, b);
    double tol = cfg.quadrature_tolerance * std::max(1.0, detail::series_error(whole));
    return detail::adaptive_series(f, a, b, whole, tol, 0, cfg);
}

/// Integral of a series-valued integrand whose coefficients are polynomials of
/// degree <= `degree` in the integration variable: one Gauss-Legendre rule, exact
/// up to rounding. Each coefficient is a compensated sum over the nodes.
template <class F>
EpsSeries integrate_series_polynomial(F f, double a, double b, int degree)
{
    const auto& [nodes, weights] = detail::gauss_legendre(std::max(1, degree / 2 + 1));
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    struct Acc {
        double sum = 0.0, carry = 0.0, magnitude = 0.0;
    };
    std::map<Rational, Acc> acc;
    Order tail = Order::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        EpsSeries v = f(mid + half * nodes[i]);
        tail = min_order(tail, v.tail());
        for (const auto& t : v.terms()) {
            double term = weights[i] * half * t.coefficient;
            Acc& c = acc[t.exponent];
            double next = c.sum + term;
            c.carry += std::abs(c.sum) >= std::abs(term) ? (c.sum - next) + term : (term - next) + c.sum;
            c.sum = next;
            c.magnitude += std::abs(term);
        }
    }
    std::vector<Term> terms;
    for (const auto& [e, c] : acc) {
        double total = c.sum + c.carry;
        if (!detail::cancelled(total, c.magnitude))
            terms.push_back({e, total});
    }
    return EpsSeries(std::move(terms), tail);
}

} // namespace cgn
