#pragma once

// Generalized functions u_eps(x) given as expressions on an open set U:
// evaluation at near-standard points, valuation estimates of derivatives,
// sharp-continuity tables and the invertible-point probe.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "gen_num.hpp"
#include "open_set.hpp"
#include "report.hpp"

namespace cgn {

struct GenFun {
    Expr expr;
    OpenSet1D domain = OpenSet1D::real_line();
};

/// Representative value u_eps0(x0).
inline double gf_eval_real(const GenFun& u, double eps0, double x0)
{
    if (!u.domain.contains(x0))
        throw DomainError("point outside the domain " + u.domain.to_string());
    return eval_real(u.expr, eps0, x0);
}

/// u(X) for near-standard X with st X in U, branch by branch in Taylor mode.
inline GenNum gf_eval_gen(const GenFun& u, const GenNum& X, const Config& cfg = {})
{
    NearStandard ns = gn_near_standard_decompose(X);
    if (!u.domain.contains(ns.standard))
        throw DomainError("standard part " + detail::shortest(ns.standard) + " lies outside " +
                          u.domain.to_string());
    return X.map([&](const EpsSeries& b) { return evaluate(u.expr, SeriesOps{b, cfg}); });
}

inline Expr gf_derivative(const Expr& u, int order)
{
    return derivative(u, order);
}

inline GenFun gf_derivative(const GenFun& u, int order)
{
    return {derivative(u.expr, order), u.domain};
}

/// Largest relative gap between a series result and the representative evaluation
/// at eps = 2^-j, j in [j_lo, j_hi].
inline double oracle_gap(const GenFun& u, const GenNum& X, const GenNum& result, int j_lo = 10, int j_hi = 20)
{
    double worst = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) {
        double eps = std::ldexp(1.0, -j);
        double series = result.evaluate(j);
        double direct = eval_real(u.expr, eps, X.evaluate(j));
        worst = std::max(worst, std::abs(series - direct) / std::max(1.0, std::abs(series)));
    }
    return worst;
}

/// Fitted valuation: a rational when the slope rounds, +inf when negligible.
struct ValuationEstimate {
    bool infinite = false;
    std::optional<Rational> rational;
    double slope = 0.0;
    std::vector<std::pair<int, double>> samples; ///< (j, sup)

    double value() const
    {
        if (infinite)
            return std::numeric_limits<double>::infinity();
        return rational ? to_double(*rational) : slope;
    }

    std::string to_string() const
    {
        if (infinite)
            return "inf";
        return rational ? cgn::to_string(*rational) : detail::shortest(slope);
    }

    /// N = ceil(-v) when negative, else 0.
    int moderate_order() const
    {
        if (infinite)
            return 0;
        double v = value();
        return v >= 0.0 ? 0 : static_cast<int>(std::ceil(-v - 1e-12));
    }
};

namespace detail {

/// Simplest rational with denominator <= 12 within `margin` of x.
inline std::optional<Rational> round_slope(double x, double margin)
{
    for (std::int64_t q = 1; q <= 12; ++q) {
        double p = std::round(x * static_cast<double>(q));
        if (std::abs(p / static_cast<double>(q) - x) <= margin)
            return Rational(static_cast<std::int64_t>(p), q);
    }
    return std::nullopt;
}

inline double sup_on_grid(const Expr& d, const ClosedInterval& K, double eps, int points)
{
    double sup = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = K.lo + (K.hi - K.lo) * i / (points - 1);
        double v = std::abs(eval_real(d, eps, x));
        if (!std::isfinite(v))
            throw DomainError("derivative is not finite at x = " + shortest(x));
        sup = std::max(sup, v);
    }
    return sup;
}

} // namespace detail

/// Fits log sup_K |d^alpha u_eps| against log eps for eps = 2^-j, j = 4..40.
inline ValuationEstimate gf_valuation_estimate(const GenFun& u, const ClosedInterval& K, int alpha,
                                               const Config& cfg = {})
{
    if (!(K.lo <= K.hi) || !u.domain.component_of_segment(K.lo, K.hi))
        throw DomainError("compact set is not inside the domain");
    Expr d = derivative(u.expr, alpha);
    ValuationEstimate est;
    std::vector<double> xs, ys;
    bool trailing_underflow = false;
    for (int j = 4; j <= 40; ++j) {
        double eps = std::ldexp(1.0, -j);
        double sup = detail::sup_on_grid(d, K, eps, 257);
        est.samples.push_back({j, sup});
        if (sup < cfg.negligible_threshold) {
            trailing_underflow = true;
            continue;
        }
        trailing_underflow = false;
        xs.push_back(std::log(eps));
        ys.push_back(std::log(sup));
    }
    if (xs.size() < 2 || trailing_underflow) {
        est.infinite = true;
        return est;
    }
    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    est.slope = sxy / sxx;
    est.rational = detail::round_slope(est.slope, cfg.fit_margin);
    return est;
}

/// e^(-v) of the fitted valuation.
inline double gf_seminorm(const GenFun& u, const ClosedInterval& K, int alpha, const Config& cfg = {})
{
    ValuationEstimate v = gf_valuation_estimate(u, K, alpha, cfg);
    return v.infinite ? 0.0 : std::exp(-v.value());
}

/// p(u) < rho for an invertible positive rho: decided by comparing the fitted
/// valuation with the valuation of rho, undecided within the fit margin.
inline Decision gf_seminorm_ball(const GenFun& u, const ClosedInterval& K, int alpha, const GenNum& rho,
                                 const Config& cfg = {})
{
    if (gn_invertible(rho).truth != Decision::yes)
        throw NotInvertible("seminorm ball radius must be invertible");
    if (gn_order_compare(GenNum(0.0), rho).kind != CompareVerdict::LE)
        throw DomainError("seminorm ball radius must be positive");
    Valuation vr = gn_valuation(rho);
    ValuationEstimate v = gf_valuation_estimate(u, K, alpha, cfg);
    if (v.infinite)
        return {Decision::yes};
    double q = vr.value().to_double();
    if (v.value() > q + cfg.fit_margin)
        return {Decision::yes};
    if (v.value() < q - cfg.fit_margin)
        return {Decision::no};
    return {Decision::unknown, vr.value()};
}

/// Sequence k -> x_k with a candidate limit, for 1 <= k <= k_max.
struct SequenceSpec {
    std::function<GenNum(int)> term;
    GenNum limit;
    int k_max = 10;
    std::string label;
};

namespace detail {

/// Decides v_lhs >= v_rhs - shift for bracketed valuations.
inline Decision valuation_at_least(const Valuation& lhs, const Valuation& rhs, int shift)
{
    auto shifted = [shift](const Order& o) { return o.is_infinite() ? o : Order(o.value() - Rational(shift)); };
    if (!(lhs.lower < shifted(rhs.upper)))
        return {Decision::yes};
    if (lhs.upper < shifted(rhs.lower))
        return {Decision::no};
    return {Decision::unknown, lhs.lower};
}

} // namespace detail

/// Checks |u(x_k) - u(x)|_e <= e^N |x_k - x|_e row by row, and the Lipschitz form
/// gabs(u(x_k) - u(x)) <= K gabs(x_k - x) with K built from the sup of u'.
inline VerdictReport gf_continuity_bound(const GenFun& u, const GenNum& x, const SequenceSpec& seq,
                                         const Config& cfg = {})
{
    VerdictReport rep;
    rep.title = "sharp continuity bound";
    rep.columns = {"k", "v_lhs", "v_rhs", "lhs", "rhs", "holds", "lipschitz"};

    double lo = gn_standard_part(x), hi = lo;
    std::vector<GenNum> points;
    for (int k = 1; k <= seq.k_max; ++k) {
        points.push_back(seq.term(k));
        double s = gn_standard_part(points.back());
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    double room = u.domain.distance_to_complement(lo, hi);
    if (!(room > 0.0))
        throw DomainError("sequence and point do not lie in one component of the domain");
    double margin = std::min(0.25, 0.5 * room);
    ClosedInterval K{lo - margin, hi + margin};

    ValuationEstimate est = gf_valuation_estimate(u, K, 1, cfg);
    int N = est.moderate_order();

    // K_lip = max(1, 2 max_j sup_j eps_j^N) eps^-N
    double c = 1.0;
    for (const auto& [j, sup] : est.samples)
        c = std::max(c, 2.0 * sup * std::pow(std::ldexp(1.0, -j), N));
    GenNum lip = GenNum::eps(Rational(-N), c);

    GenNum ux = gf_eval_gen(u, x, cfg);
    bool all = true;
    for (int k = 1; k <= seq.k_max; ++k) {
        json row;
        row["k"] = k;
        try {
            const GenNum& xk = points[static_cast<std::size_t>(k - 1)];
            GenNum du_k = gf_eval_gen(u, xk, cfg) - ux;
            GenNum dx_k = xk - x;
            Valuation vl = gn_valuation(du_k), vr = gn_valuation(dx_k);
            Decision holds = detail::valuation_at_least(vl, vr, N);
            row["v_lhs"] = order_json(vl.lower);
            row["v_rhs"] = order_json(vr.lower);
            row["lhs"] = exp_neg(vl.lower);
            row["rhs"] = std::exp(static_cast<double>(N)) * exp_neg(vr.lower);
            row["holds"] = to_string(holds);
            Decision lipschitz = gn_leq(gn_abs(du_k), lip * gn_abs(dx_k));
            row["lipschitz"] = to_string(lipschitz);
            all = all && holds.truth == Decision::yes && lipschitz.truth == Decision::yes;
        } catch (const Error& e) {
            row["holds"] = std::string("error: ") + e.what();
            all = false;
        }
        rep.rows.push_back(row);
    }
    rep.summary["N"] = N;
    rep.summary["v_est_derivative"] = est.to_string();
    rep.summary["lipschitz_constant"] = lip.to_string();
    rep.passed = all;
    return rep;
}

/// Sharp limit predicate at a finite set of sample points: every sample with
/// gabs(x - x0) < delta must satisfy gabs(u(x) - l) < eta.
inline Decision gf_sharp_limit_holds(const GenFun& u, const GenNum& x0, const GenNum& l, const GenNum& eta,
                                     const GenNum& delta, const std::vector<GenNum>& samples,
                                     const Config& cfg = {})
{
    Decision all{Decision::yes};
    for (const auto& x : samples) {
        Decision near{Decision::unknown};
        try {
            near = gn_strictly_less(gn_abs(x - x0), delta);
        } catch (const UnknownSign& e) {
            near = {Decision::unknown, e.order};
        }
        if (near.truth == Decision::no)
            continue;
        Decision close{Decision::unknown};
        try {
            close = gn_strictly_less(gn_abs(gf_eval_gen(u, x, cfg) - l), eta);
        } catch (const UnknownSign& e) {
            close = {Decision::unknown, e.order};
        }
        if (near.truth == Decision::yes)
            all = all && close;
        else if (close.truth != Decision::yes)
            all = all && Decision{Decision::unknown, near.blocking};
        if (all.truth == Decision::no)
            return all;
    }
    return all;
}

/// Standard parts, offsets and orders tried by the probe, in grid order.
struct ProbeGrid {
    std::vector<Rational> centers{Rational(0), Rational(1, 2), Rational(-1, 2), Rational(1),
                                  Rational(-1), Rational(2), Rational(-2)};
    std::vector<double> offsets{1.0, -1.0, 0.5, -0.5};
    std::vector<Rational> orders{Rational(1, 2), Rational(1), Rational(2), Rational(3), Rational(4),
                                 Rational(5), Rational(6), Rational(7), Rational(8), Rational(9),
                                 Rational(10)};
};

struct ProbeResult {
    bool found = false;
    GenNum witness;
    GenNum value;
    int probes = 0;
};

namespace detail {

/// Grid centers inside U; falls back to interior points of each component.
inline std::vector<Rational> probe_centers(const OpenSet1D& U, const ProbeGrid& grid)
{
    std::vector<Rational> out;
    for (const auto& r : grid.centers)
        if (U.contains(to_double(r)))
            out.push_back(r);
    if (!out.empty())
        return out;
    for (const auto& p : U.intervals()) {
        if (p.lo.kind == Endpoint::finite && p.hi.kind == Endpoint::finite) {
            Rational w = p.hi.value - p.lo.value;
            for (Rational f : {Rational(1, 2), Rational(1, 4), Rational(3, 4)})
                out.push_back(p.lo.value + f * w);
        } else if (p.lo.kind == Endpoint::finite) {
            out.push_back(p.lo.value + Rational(1));
            out.push_back(p.lo.value + Rational(2));
        } else if (p.hi.kind == Endpoint::finite) {
            out.push_back(p.hi.value - Rational(1));
            out.push_back(p.hi.value - Rational(2));
        }
    }
    return out;
}

inline bool is_witness_value(const GenNum& v, const Config& cfg)
{
    for (const auto& b : v.branches())
        for (const auto& t : b.terms())
            if (std::abs(t.coefficient) > cfg.witness_threshold && t.exponent < cfg.tail_order)
                return true;
    return false;
}

} // namespace detail

/// First invertible near-standard grid point where u has a visible nonzero term.
inline ProbeResult gf_probe_nonzero(const GenFun& u, const ProbeGrid& grid = {}, const Config& cfg = {})
{
    ProbeResult res;
    for (const auto& r : detail::probe_centers(u.domain, grid)) {
        for (double c : grid.offsets) {
            for (const auto& q : grid.orders) {
                GenNum X = GenNum(to_double(r)) + GenNum::eps(q, c);
                ++res.probes;
                GenNum v;
                try {
                    v = gf_eval_gen(u, X, cfg);
                } catch (const Error&) {
                    continue;
                }
                if (detail::is_witness_value(v, cfg)) {
                    res.found = true;
                    res.witness = X;
                    res.value = v;
                    return res;
                }
            }
        }
    }
    return res;
}

} // namespace cgn
