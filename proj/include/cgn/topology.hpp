#pragma once

// Sharp, gabs, Fermat and omega balls; conversions between sharp and gabs radii;
// openness of sharp spheres; the infinitesimal indicator; distance tables for sequences.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gen_fun.hpp"
#include "gen_num.hpp"
#include "report.hpp"

namespace cgn {

enum class BallKind { sharp, gabs, fermat, omega };

struct BallSpec {
    BallKind kind = BallKind::sharp;
    GenNum center;
    double radius = 1.0;   ///< sharp, fermat, omega
    GenNum gabs_radius;    ///< gabs: invertible and positive
};

namespace detail {

inline void require_positive_invertible(const GenNum& rho)
{
    Decision inv = gn_invertible(rho);
    if (inv.truth == Decision::no)
        throw NotInvertible("radius is not invertible");
    if (inv.truth == Decision::unknown)
        throw UnknownSign("invertibility of the radius", inv.blocking);
    Decision pos = gn_strictly_less(GenNum(0.0), rho);
    if (pos.truth == Decision::unknown)
        throw UnknownSign("sign of the radius", pos.blocking);
    if (pos.truth == Decision::no)
        throw DomainError("radius is not positive");
}

/// d < r for a bracketed sharp distance.
inline Decision sharp_below(const SharpDistance& d, double r)
{
    if (d.upper < r)
        return {Decision::yes};
    if (d.lower >= r)
        return {Decision::no};
    return {Decision::unknown, d.valuation.lower};
}

} // namespace detail

/// gabs(x - center) < rho, strictly: the difference is positive and invertible on every branch.
inline Decision gabs_ball_contains(const GenNum& center, const GenNum& rho, const GenNum& x)
{
    GenNum d;
    try {
        d = gn_abs(x - center);
    } catch (const UnknownSign& e) {
        return {Decision::unknown, e.order};
    }
    return gn_strictly_less(d, rho);
}

inline Decision ball_contains(const BallSpec& ball, const GenNum& x)
{
    switch (ball.kind) {
    case BallKind::sharp: return detail::sharp_below(gn_sharp_dist(x, ball.center), ball.radius);
    case BallKind::gabs:
        detail::require_positive_invertible(ball.gabs_radius);
        return gabs_ball_contains(ball.center, ball.gabs_radius, x);
    case BallKind::fermat:
        return {gn_metric(MetricKind::fermat, x, ball.center) < ball.radius ? Decision::yes : Decision::no};
    case BallKind::omega:
        return {gn_metric(MetricKind::omega, x, ball.center) < ball.radius ? Decision::yes : Decision::no};
    }
    return {Decision::unknown};
}

/// B^g_rho(x) inside B^s_r(x) for every center, with rho = eps^exponent.
struct GabsCertificate {
    double q;          ///< -log(r/2) + 1
    Rational exponent; ///< ceil(q)
    GenNum rho;
};

inline GabsCertificate sharp_to_gabs(double r)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("sharp radius must be a positive real");
    double q = -std::log(r / 2.0) + 1.0;
    Rational e(static_cast<std::int64_t>(std::ceil(q - 1e-12)));
    return {q, e, GenNum::eps(e)};
}

/// B^s_r(x) inside B^g_rho(x) for every center.
struct SharpCertificate {
    Rational q; ///< largest leading exponent of rho over branches
    double r;   ///< exp(-(q+1))
};

inline SharpCertificate gabs_to_sharp(const GenNum& rho)
{
    detail::require_positive_invertible(rho);
    Rational q = rho.branch(0).leading().exponent;
    for (const auto& b : rho.branches())
        q = std::max(q, b.leading().exponent);
    return {q, std::exp(-to_double(q + Rational(1)))};
}

struct SphereWitness {
    Rational valuation; ///< v(y - center), so r = exp(-valuation)
    Rational q;         ///< gabs radius eps^q of the ball around y inside the sphere
};

/// For y on the sphere of radius r about center, q = v + 1 > -log r.
inline SphereWitness sphere_openness_witness(const GenNum& center, double r, const GenNum& y)
{
    Valuation v = gn_valuation(y - center);
    if (!v.exact() || v.lower.is_infinite())
        throw DomainError("y is not on a sphere of positive radius about the center");
    Rational val = v.lower.value();
    if (std::abs(std::exp(-to_double(val)) - r) > 1e-12 * r)
        throw DomainError("d_s(y, center) = " + detail::shortest(std::exp(-to_double(val))) + " differs from r");
    return {val, val + Rational(1)};
}

/// Whether z lies in the witness ball around y, and if so whether d_s(center, z) = r.
struct SphereCheck {
    Decision in_ball;
    bool on_sphere = false;
};

inline SphereCheck sphere_check(const GenNum& center, const GenNum& y, const SphereWitness& w, const GenNum& z)
{
    SphereCheck out{gabs_ball_contains(y, GenNum::eps(w.q), z)};
    if (out.in_ball.truth != Decision::yes)
        return out;
    Valuation v = gn_valuation(z - center);
    out.on_sphere = v.exact() && v.lower == Order(w.valuation);
    return out;
}

/// 1 if x is infinitesimal, 0 otherwise.
inline int indicator_infinitesimal(const GenNum& x)
{
    Decision d = gn_in_monad(x, GenNum(0.0));
    if (d.truth == Decision::unknown)
        throw UnknownSign("infinitesimality", d.blocking);
    return d.truth == Decision::yes ? 1 : 0;
}

namespace detail {

inline std::string trend(const std::vector<double>& v)
{
    if (v.empty())
        return "empty";
    bool inc = true, dec = true, flat = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1])
            dec = false;
        if (v[i] < v[i - 1])
            inc = false;
        if (v[i] != v[i - 1])
            flat = false;
    }
    if (flat)
        return "constant";
    if (dec)
        return "nonincreasing";
    if (inc)
        return "nondecreasing";
    return "mixed";
}

inline json column_summary(const std::vector<double>& v)
{
    json s;
    s["trend"] = trend(v);
    if (!v.empty()) {
        s["first"] = v.front();
        s["last"] = v.back();
    }
    return s;
}

} // namespace detail

/// Table of d_s, d_F, d_omega from x_k to the candidate limit.
inline VerdictReport classify_sequence(const SequenceSpec& seq)
{
    VerdictReport rep;
    rep.title = seq.label.empty() ? "sequence distances" : seq.label;
    rep.columns = {"k", "d_s", "d_F", "d_omega"};
    std::vector<double> ds, df, dw;
    for (int k = 1; k <= seq.k_max; ++k) {
        json row;
        row["k"] = k;
        try {
            GenNum xk = seq.term(k);
            SharpDistance s = gn_sharp_dist(xk, seq.limit);
            if (s.exact()) {
                row["d_s"] = s.value();
                ds.push_back(s.value());
            } else {
                row["d_s"] = "[" + detail::shortest(s.lower) + "," + detail::shortest(s.upper) + "]";
            }
            if (gn_is_near_standard(xk) && gn_is_near_standard(seq.limit)) {
                double f = gn_metric(MetricKind::fermat, xk, seq.limit);
                row["d_F"] = f;
                df.push_back(f);
                try {
                    double w = gn_metric(MetricKind::omega, xk, seq.limit);
                    row["d_omega"] = w;
                    dw.push_back(w);
                } catch (const UnknownSign& e) {
                    rep.diagnostics.push_back("k=" + std::to_string(k) + ": " + e.what());
                }
            } else {
                rep.diagnostics.push_back("k=" + std::to_string(k) + ": not near-standard, d_F and d_omega omitted");
            }
        } catch (const Error& e) {
            rep.diagnostics.push_back("k=" + std::to_string(k) + ": " + e.what());
        }
        rep.rows.push_back(row);
    }
    rep.summary["d_s"] = detail::column_summary(ds);
    rep.summary["d_F"] = detail::column_summary(df);
    rep.summary["d_omega"] = detail::column_summary(dw);
    return rep;
}

/// A subset of the real line symmetric about a center: everything, a singleton,
/// or an interval whose endpoints are both open or both closed.
struct RealTrace {
    enum Kind { line, interval, singleton };
    Kind kind = line;
    double center = 0.0;
    double radius = std::numeric_limits<double>::infinity();
    bool closed = false;

    bool contains(double s) const
    {
        switch (kind) {
        case line: return true;
        case singleton: return detail::cancelled(s - center, std::abs(s) + std::abs(center));
        case interval: {
            double d = std::abs(s - center);
            return closed ? d <= radius : d < radius;
        }
        }
        return false;
    }

    std::string to_string() const
    {
        switch (kind) {
        case line: return "(-inf,inf)";
        case singleton: return "{" + detail::shortest(center) + "}";
        case interval: {
            std::string lo = detail::shortest(center - radius), hi = detail::shortest(center + radius);
            return closed ? "[" + lo + "," + hi + "]" : "(" + lo + "," + hi + ")";
        }
        }
        return "?";
    }
};

namespace detail {

inline RealTrace branch_trace(double center, const EpsSeries& rho)
{
    const Term& lead = rho.leading();
    if (lead.exponent < Rational(0))
        return {RealTrace::line, center};
    if (lead.exponent > Rational(0))
        return {RealTrace::singleton, center, 0.0};
    RealTrace t{RealTrace::interval, center, lead.coefficient, false};
    EpsSeries rest = rho - EpsSeries(lead.coefficient);
    SeriesSign s = rest.sign();
    if (s.kind == SeriesSign::unknown)
        throw UnknownSign("boundary of the real trace", s.blocking);
    t.closed = s.kind == SeriesSign::positive;
    return t;
}

inline RealTrace intersect(const RealTrace& a, const RealTrace& b)
{
    if (a.kind == RealTrace::line)
        return b;
    if (b.kind == RealTrace::line)
        return a;
    if (a.kind == RealTrace::singleton)
        return a;
    if (b.kind == RealTrace::singleton)
        return b;
    if (a.radius < b.radius)
        return a;
    if (b.radius < a.radius)
        return b;
    RealTrace t = a;
    t.closed = a.closed && b.closed;
    return t;
}

} // namespace detail

/// { s real : gabs(s - center) < rho }.
inline RealTrace real_trace_of_gabs_ball(double center, const GenNum& rho)
{
    detail::require_positive_invertible(rho);
    RealTrace out{RealTrace::line, center};
    for (const auto& b : rho.branches())
        out = detail::intersect(out, detail::branch_trace(center, b));
    return out;
}

} // namespace cgn
