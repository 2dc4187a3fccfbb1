#pragma once

// Thickenings of open sets and the generalized incremental ratio
// r(x,h) = integral_0^1 f'(x + s h) ds, with f(x+h) = f(x) + h r(x,h).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "gen_fun.hpp"
#include "gen_num.hpp"
#include "open_set.hpp"
#include "quadrature.hpp"
#include "report.hpp"

namespace cgn {

/// The closed segment between x and x+h lies in one interval of U.
inline bool thickening_contains(const OpenSet1D& U, double x, double h)
{
    return U.component_of_segment(x, x + h) != nullptr;
}

struct ThickeningVerdict {
    bool contained = false;
    /// Half the distance from the standard segment to the complement of U.
    double a = 0.0;
};

inline ThickeningVerdict near_std_thickening(const OpenSet1D& U, const GenNum& X, const GenNum& H)
{
    double x = gn_standard_part(X), h = gn_standard_part(H);
    if (!thickening_contains(U, x, h))
        return {};
    return {true, 0.5 * U.distance_to_complement(x, x + h)};
}

namespace detail {

inline void require_thickening(const OpenSet1D& U, const GenNum& X, const GenNum& H)
{
    if (!near_std_thickening(U, X, H).contained)
        throw DomainError("segment [x, x+h] leaves " + U.to_string());
}

/// Upper bound on the degree in s of the coefficients of f'(x + s h) for an
/// infinitesimal h: every power of h raises the exponent by at least low(h).
inline int ratio_degree(const Expr& df, const EpsSeries& x, const EpsSeries& h, const Config& cfg)
{
    Rational low = h.lowest().value();
    Rational bottom(0), top = cfg.tail_order;
    for (double s : {0.0, 0.5, 1.0}) {
        EpsSeries v = evaluate(df, SeriesOps{x + s * h, cfg});
        if (v.has_leading())
            bottom = std::min(bottom, v.leading().exponent);
        if (v.tail().is_finite())
            top = std::max(top, v.tail().value());
        else if (!v.terms().empty())
            top = std::max(top, v.terms().back().exponent);
    }
    return static_cast<int>(ceil_of((top - bottom + low) / low));
}

inline EpsSeries abs_series(const EpsSeries& s)
{
    std::vector<Term> terms;
    for (const auto& t : s.terms())
        terms.push_back({t.exponent, std::abs(t.coefficient)});
    return EpsSeries(std::move(terms), s.tail());
}

inline double largest_coefficient(const EpsSeries& s)
{
    double m = 0.0;
    for (const auto& t : s.terms())
        m = std::max(m, std::abs(t.coefficient));
    return m;
}

/// Segment of standard length. Two exact formulas: the quadrature of f' along the
/// segment, and (f(x+h) - f(x)) / h from d/ds f(x + s h) = h f'(x + s h). Each has
/// a rounding bound proportional to the absolute sums it cancels, and the one with
/// the smaller bound is returned.
inline EpsSeries standard_segment_ratio(const Expr& f, const Expr& df, const EpsSeries& x, const EpsSeries& h,
                                        const Config& cfg)
{
    EpsSeries fxh = evaluate(f, SeriesOps{x + h, cfg}), fx = evaluate(f, SeriesOps{x, cfg});
    EpsSeries inv = invert(h, cfg);
    EpsSeries div = (fxh - fx) * inv;
    double div_bound = largest_coefficient((abs_series(fxh) + abs_series(fx)) * abs_series(inv));

    auto integrand = [&](double s) { return evaluate(df, SeriesOps{x + s * h, cfg}); };
    auto magnitude = [&](double s) { return abs_series(integrand(s)); };
    EpsSeries mass;
    constexpr int panels = 8;
    for (int i = 0; i < panels; ++i)
        mass = mass + gl_panel<EpsSeries>(magnitude, double(i) / panels, double(i + 1) / panels);
    if (largest_coefficient(mass) >= div_bound)
        return div;
    try {
        return integrate_series(integrand, 0.0, 1.0, cfg);
    } catch (const NumericError&) {
        return div;
    }
}

inline EpsSeries ratio_branch(const Expr& f, const Expr& df, const EpsSeries& x, const EpsSeries& h,
                              const Config& cfg)
{
    if (h.is_zero())
        return evaluate(df, SeriesOps{x, cfg});
    if (h.coefficient(Rational(0)) != 0.0)
        return standard_segment_ratio(f, df, x, h, cfg);
    auto integrand = [&](double s) { return evaluate(df, SeriesOps{x + s * h, cfg}); };
    return integrate_series_polynomial(integrand, 0.0, 1.0, ratio_degree(df, x, h, cfg));
}

} // namespace detail

/// r(X,H) = integral_0^1 f'(X + s H) ds in Taylor mode. For infinitesimal H the
/// coefficients are polynomials in s and one Gauss-Legendre rule integrates them
/// exactly. For H with a nonzero standard part the integral also equals
/// (f(X+H) - f(X)) / H, and the better conditioned of the two is used.
inline GenNum incremental_ratio(const GenFun& f, const GenNum& X, const GenNum& H, const Config& cfg = {})
{
    detail::require_thickening(f.domain, X, H);
    Expr df = derivative(f.expr, 1);
    return GenNum::zip(X, H, [&](const EpsSeries& x, const EpsSeries& h) {
        return detail::ratio_branch(f.expr, df, x, h, cfg);
    });
}

/// Representative-level r_eps(x0,h0) by quadrature.
inline double incremental_ratio_numeric(const GenFun& f, double eps0, double x0, double h0,
                                        const Config& cfg = {})
{
    if (!thickening_contains(f.domain, x0, h0))
        throw DomainError("segment [x, x+h] leaves " + f.domain.to_string());
    Expr df = derivative(f.expr, 1);
    return integrate([&](double s) { return eval_real(df, eps0, x0 + s * h0); }, 0.0, 1.0, cfg);
}

/// (f(X+H) - f(X)) H^-1, defined for invertible H.
inline GenNum division_ratio(const GenFun& f, const GenNum& X, const GenNum& H, const Config& cfg = {})
{
    detail::require_thickening(f.domain, X, H);
    GenNum num = gf_eval_gen(f, X + H, cfg) - gf_eval_gen(f, X, cfg);
    return num * gn_invert(H, cfg);
}

namespace detail {

inline double max_coefficient(const GenNum& x)
{
    double m = 0.0;
    for (const auto& b : x.branches())
        for (const auto& t : b.terms())
            m = std::max(m, std::abs(t.coefficient));
    return m;
}

/// Series in eta = eps / l: the coefficient of eps^e is multiplied by l^e.
inline EpsSeries rescaled(const EpsSeries& s, double l)
{
    std::vector<Term> terms;
    for (const auto& t : s.terms())
        terms.push_back({t.exponent, t.coefficient * real_power(l, t.exponent)});
    return EpsSeries(std::move(terms), s.tail());
}

/// Largest l <= 1 with sum_i |h_i| l^(e_i - e_0) <= |h_0| / 2 over the non-leading
/// terms. In eta = eps / l the coefficients of 1/h are then bounded by 2 / |h_0|.
inline double conditioning_scale(const EpsSeries& h)
{
    if (!h.has_leading())
        return 1.0;
    const Term& lead = h.leading();
    auto excess = [&](double l) {
        double sum = 0.0;
        for (const auto& t : h.terms())
            if (t.exponent != lead.exponent)
                sum += std::abs(t.coefficient) * std::pow(l, to_double(t.exponent - lead.exponent));
        return sum > 0.5 * std::abs(lead.coefficient);
    };
    if (!excess(1.0))
        return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (excess(mid) ? hi : lo) = mid;
    }
    return lo;
}

/// Division path on one branch, compared with the series ratio in the rescaled
/// variable where 1/h is well conditioned. Returns the largest coefficient gap
/// below the common tail relative to max(1, |c|).
inline double division_gap(const Expr& f, const EpsSeries& x, const EpsSeries& h, const EpsSeries& r,
                           const Config& cfg)
{
    double l = conditioning_scale(h);
    EpsSeries xs = rescaled(x, l), hs = rescaled(h, l);
    EpsSeries num = evaluate(f, SeriesOps{xs + hs, cfg, l}) - evaluate(f, SeriesOps{xs, cfg, l});
    EpsSeries div = num * invert(hs, cfg);
    EpsSeries rs = rescaled(r, l);
    Order cut = min_order(div.tail(), rs.tail());
    EpsSeries a = rs.truncated(cut), b = div.truncated(cut);
    double scale = 1.0, gap = 0.0;
    for (const auto& t : a.terms())
        scale = std::max(scale, std::abs(t.coefficient));
    for (const auto& t : b.terms())
        scale = std::max(scale, std::abs(t.coefficient));
    EpsSeries d = a - b;
    for (const auto& t : d.terms())
        gap = std::max(gap, std::abs(t.coefficient));
    return gap / scale;
}

/// Largest coefficient gap below the common tail, relative to max(1, |c|).
inline double coefficient_gap(const GenNum& a, const GenNum& b)
{
    GenNum d = a - b;
    double scale = std::max(1.0, std::max(max_coefficient(a), max_coefficient(b)));
    return max_coefficient(d) / scale;
}

} // namespace detail

struct FrThresholds {
    double residual = 1e-10;
    double coefficient = 1e-10;
    double oracle = 1e-8;
    int j_lo = 10;
    int j_hi = 20;
};

/// Residual of f(X+H) = f(X) + H r, r(X,0) = f'(X), the division path and the
/// fixed-eps oracle, one row per check.
inline VerdictReport verify_fr(const GenFun& f, const GenNum& X, const GenNum& H, const Config& cfg = {},
                               const FrThresholds& th = {})
{
    VerdictReport rep;
    rep.title = "incremental ratio";
    rep.columns = {"check", "value", "threshold", "passed"};
    auto add_row = [&](const std::string& check, double value, double threshold, bool ok) {
        json row;
        row["check"] = check;
        row["value"] = value;
        row["threshold"] = threshold;
        row["passed"] = ok;
        rep.rows.push_back(row);
        rep.passed = rep.passed && ok;
    };

    GenNum r = incremental_ratio(f, X, H, cfg);
    GenNum fx = gf_eval_gen(f, X, cfg);
    GenNum fxh = gf_eval_gen(f, X + H, cfg);
    GenNum hr = H * r;
    GenNum residual = fxh - fx - hr;
    double scale = std::max({1.0, detail::max_coefficient(fxh), detail::max_coefficient(fx),
                             detail::max_coefficient(hr)});
    double res = detail::max_coefficient(residual) / scale;
    add_row("residual", res, th.residual, res <= th.residual);

    GenNum r0 = incremental_ratio(f, X, GenNum(0.0), cfg);
    GenNum dfx = gf_eval_gen(gf_derivative(f, 1), X, cfg);
    double gap0 = detail::coefficient_gap(r0, dfx);
    add_row("ratio_at_zero", gap0, th.coefficient, gap0 <= th.coefficient);

    rep.summary["ratio"] = r.to_string();
    Order tail = Order::infinity();
    for (const auto& b : residual.branches())
        tail = min_order(tail, b.tail());
    rep.summary["residual_tail"] = to_string(tail);

    if (gn_invertible(H).truth == Decision::yes) {
        double gap = 0.0;
        std::int64_t k = lcm(lcm(static_cast<std::int64_t>(X.branch_count()), static_cast<std::int64_t>(H.branch_count())),
                             static_cast<std::int64_t>(r.branch_count()));
        for (std::int64_t i = 0; i < k; ++i) {
            auto b = static_cast<std::size_t>(i);
            gap = std::max(gap, detail::division_gap(f.expr, X.branch(b), H.branch(b), r.branch(b), cfg));
        }
        add_row("division_path", gap, th.coefficient, gap <= th.coefficient);
    } else {
        rep.diagnostics.push_back("division path skipped: increment is not invertible");
    }

    double worst_identity = 0.0, worst_series = 0.0;
    Expr df = derivative(f.expr, 1);
    for (int j = th.j_lo; j <= th.j_hi; ++j) {
        double eps = std::ldexp(1.0, -j);
        double x = X.evaluate(j), h = H.evaluate(j);
        double fa = eval_real(f.expr, eps, x), fb = eval_real(f.expr, eps, x + h);
        double rn = integrate([&](double s) { return eval_real(df, eps, x + s * h); }, 0.0, 1.0, cfg);
        worst_identity = std::max(worst_identity, std::abs(fb - fa - h * rn) / std::max(1.0, std::abs(fb)));
        double rs = r.evaluate(j);
        worst_series = std::max(worst_series, std::abs(rs - rn) / std::max(1.0, std::abs(rs)));
    }
    add_row("oracle_identity", worst_identity, th.oracle, worst_identity <= th.oracle);
    add_row("oracle_series", worst_series, th.oracle, worst_series <= th.oracle);
    return rep;
}

} // namespace cgn
