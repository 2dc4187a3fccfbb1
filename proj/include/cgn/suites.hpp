#pragma once

// Randomized and tabulated property suites. Each returns a VerdictReport; the
// acceptance binary and the `demo` subcommand of the command-line tool share them.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "fermat.hpp"
#include "fermat_reyes.hpp"
#include "gen_fun.hpp"
#include "gen_num.hpp"
#include "parse.hpp"
#include "random.hpp"
#include "report.hpp"
#include "topology.hpp"

namespace cgn {

struct SuiteOutcome {
    VerdictReport report;
    /// Worst relative gap between series results and representative evaluation.
    double oracle_gap = 0.0;
};

namespace detail {

inline void fail_row(VerdictReport& rep, const std::string& what)
{
    rep.passed = false;
    if (rep.diagnostics.size() < 20)
        rep.diagnostics.push_back(what);
}

inline std::string leading_term(const GenNum& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.branch_count(); ++i) {
        const EpsSeries& b = v.branch(i);
        if (i)
            out += " || ";
        out += b.has_leading() ? EpsSeries({b.leading()}).to_string() : b.to_string();
    }
    return out;
}

} // namespace detail

/// Distinct standard reals are at sharp distance exactly 1, and every gabs ball
/// with infinitesimal radius meets the reals only in its center.
inline SuiteOutcome suite_discreteness(std::uint64_t seed, int pairs = 200)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "discreteness of the reals in the sharp topology";
    rep.columns = {"i", "a", "b", "valuation", "d_s", "trace_radius", "trace"};
    Rng rng(seed);
    const std::vector<Rational> small{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    for (int i = 0; i < pairs; ++i) {
        double a = rng.uniform(-100.0, 100.0), b = rng.uniform(-100.0, 100.0);
        while (detail::coefficients_close(a, b, coefficient_tolerance))
            b = rng.uniform(-100.0, 100.0);
        Valuation v = gn_valuation(GenNum(a) - GenNum(b));
        SharpDistance d = gn_sharp_dist(GenNum(a), GenNum(b));
        GenNum rho = GenNum::eps(rng.pick(small), rng.uniform(0.1, 2.0));
        RealTrace trace = real_trace_of_gabs_ball(a, rho);
        json row;
        row["i"] = i;
        row["a"] = a;
        row["b"] = b;
        row["valuation"] = order_json(v.lower);
        row["d_s"] = d.exact() ? d.value() : -1.0;
        row["trace_radius"] = rho.to_string();
        row["trace"] = trace.to_string();
        rep.rows.push_back(row);
        if (!(v.exact() && v.lower == Order(Rational(0)) && d.value() == 1.0))
            detail::fail_row(rep, "pair " + std::to_string(i) + ": valuation " + to_string(v.lower));
        if (trace.kind != RealTrace::singleton || !trace.contains(a) || trace.contains(b))
            detail::fail_row(rep, "pair " + std::to_string(i) + ": trace " + trace.to_string());
    }
    rep.summary["pairs"] = pairs;
    rep.summary["seed"] = seed;
    return out;
}

/// x_k = 1/k tends to 0 in d_omega while u(x) = x/eps keeps u(x_k) at sharp distance e from 0.
inline SuiteOutcome suite_conv_ex(int k_max = 100)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "x_k = 1/k and u(x) = x/eps";
    rep.columns = {"k", "d_omega_x", "d_s_u", "u_x", "oracle_gap"};
    GenFun u{parse_expr("x/eps")};
    for (int k = 1; k <= k_max; ++k) {
        GenNum xk(1.0 / k);
        double dw = gn_metric(MetricKind::omega, xk, GenNum(0.0));
        GenNum ux = gf_eval_gen(u, xk);
        double ds = gn_sharp_dist(ux, GenNum(0.0)).value();
        double gap = oracle_gap(u, xk, ux);
        out.oracle_gap = std::max(out.oracle_gap, gap);
        json row;
        row["k"] = k;
        row["d_omega_x"] = dw;
        row["d_s_u"] = ds;
        row["u_x"] = ux.to_string();
        row["oracle_gap"] = gap;
        rep.rows.push_back(row);
        if (dw != 1.0 / k)
            detail::fail_row(rep, "k=" + std::to_string(k) + ": d_omega = " + detail::shortest(dw));
        if (std::abs(ds - std::numbers::e) > 1e-12)
            detail::fail_row(rep, "k=" + std::to_string(k) + ": d_s(u(x_k),0) = " + detail::shortest(ds));
    }
    rep.summary["k_max"] = k_max;
    rep.summary["oracle_gap"] = out.oracle_gap;
    return out;
}

/// Ultrametric inequality with Krull equality, and the valuation laws.
inline SuiteOutcome suite_ultrametric(std::uint64_t seed, int samples = 10000)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "ultrametric and valuation laws";
    rep.columns = {"law", "checked", "failures"};
    Rng rng(seed);
    long tri = 0, krull = 0, mul = 0, mul_eq = 0, add = 0, sym = 0, scalar = 0;
    long f_tri = 0, f_krull = 0, f_mul = 0, f_mul_eq = 0, f_add = 0, f_sym = 0, f_scalar = 0;
    for (int i = 0; i < samples; ++i) {
        GenNum x = random_gennum(rng), y = random_gennum(rng), z = random_gennum(rng);
        Order vxy = gn_valuation(x - y).value(), vyz = gn_valuation(y - z).value();
        Order vxz = gn_valuation(x - z).value();
        ++tri;
        if (vxz < min_order(vxy, vyz))
            ++f_tri;
        if (vxy != vyz) {
            ++krull;
            if (vxz != min_order(vxy, vyz))
                ++f_krull;
        }

        GenNum u = random_gennum(rng), w = random_gennum(rng);
        Order vu = gn_valuation(u).value(), vw = gn_valuation(w).value();
        Order vuw = gn_valuation(u * w).value();
        ++mul;
        if (vuw < vu + vw)
            ++f_mul;
        if (u.branch_count() == 1 && w.branch_count() == 1) {
            ++mul_eq;
            if (vuw != vu + vw)
                ++f_mul_eq;
        }
        ++add;
        if (gn_valuation(u + w).value() < min_order(vu, vw))
            ++f_add;
        ++sym;
        if (gn_valuation(u - w).value() != gn_valuation(w - u).value())
            ++f_sym;
        ++scalar;
        double lambda = rng.uniform(0.1, 10.0) * (rng.chance(0.5) ? 1.0 : -1.0);
        if (gn_valuation(lambda * u).value() != vu)
            ++f_scalar;
    }
    auto row = [&](const char* law, long n, long f) {
        json r;
        r["law"] = law;
        r["checked"] = n;
        r["failures"] = f;
        rep.rows.push_back(r);
        if (f)
            detail::fail_row(rep, std::string(law) + ": " + std::to_string(f) + " failures");
    };
    row("d_s(x,z) <= max(d_s(x,y), d_s(y,z))", tri, f_tri);
    row("Krull equality when distances differ", krull, f_krull);
    row("v(uw) >= v(u) + v(w)", mul, f_mul);
    row("v(uw) = v(u) + v(w) on single branches", mul_eq, f_mul_eq);
    row("v(u+w) >= min(v(u), v(w))", add, f_add);
    row("v(u-w) = v(w-u)", sym, f_sym);
    row("|lambda u|_e = |u|_e", scalar, f_scalar);
    rep.summary["samples"] = samples;
    rep.summary["seed"] = seed;
    return out;
}

namespace detail {

/// Random y with gabs(y) < eps^n: leading exponent n with |c| < 1, or above n, or zero.
inline GenNum random_below_monomial(Rng& rng, const Rational& n)
{
    static const std::vector<Rational> offsets{Rational(1, 4), Rational(1, 2), Rational(1), Rational(2)};
    auto k = static_cast<std::size_t>(rng.integer(1, 2));
    std::vector<EpsSeries> b;
    for (std::size_t i = 0; i < k; ++i) {
        int mode = static_cast<int>(rng.integer(0, 4));
        if (mode == 0) {
            b.push_back(EpsSeries{});
            continue;
        }
        std::vector<Term> terms;
        Rational lead = mode <= 2 ? n : n + rng.pick(offsets);
        double c = mode <= 2 ? rng.uniform(0.05, 0.95) : rng.uniform(0.1, 5.0);
        terms.push_back({lead, rng.chance(0.5) ? c : -c});
        terms.push_back({lead + rng.pick(offsets), rng.uniform(-3.0, 3.0)});
        b.push_back(EpsSeries(std::move(terms)));
    }
    return GenNum(std::move(b));
}

/// Random y with valuation strictly above v (or zero).
inline GenNum random_above(Rng& rng, const Rational& v)
{
    static const std::vector<Rational> offsets{Rational(1, 4), Rational(1, 2), Rational(1), Rational(3)};
    if (rng.chance(0.05))
        return GenNum(0.0);
    auto k = static_cast<std::size_t>(rng.integer(1, 2));
    std::vector<EpsSeries> b;
    for (std::size_t i = 0; i < k; ++i) {
        Rational lead = v + rng.pick(offsets);
        b.push_back(EpsSeries({{lead, rng.uniform(-5.0, 5.0)}, {lead + rng.pick(offsets), rng.uniform(-5.0, 5.0)}}));
    }
    return GenNum(std::move(b));
}

inline GenNum random_positive_invertible(Rng& rng)
{
    auto k = static_cast<std::size_t>(rng.integer(1, 2));
    std::vector<EpsSeries> b;
    for (std::size_t i = 0; i < k; ++i) {
        Rational lead(rng.integer(-4, 8), 2);
        b.push_back(EpsSeries({{lead, rng.uniform(0.1, 5.0)}, {lead + Rational(1), rng.uniform(-5.0, 5.0)}}));
    }
    return GenNum(std::move(b));
}

} // namespace detail

/// Certificates B^g_rho inside B^s_r and B^s_r inside B^g_rho, each checked on sampled members.
inline SuiteOutcome suite_ball_convert(std::uint64_t seed, int certificates = 100, int members = 100)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "sharp and gabs ball certificates";
    rep.columns = {"i", "direction", "center", "input", "q", "output", "members", "verified"};
    Rng rng(seed);
    for (int i = 0; i < certificates; ++i) {
        GenNum center = random_gennum(rng);
        double r = std::exp(rng.uniform(std::log(0.01), std::log(5.0)));
        GabsCertificate cert = sharp_to_gabs(r);
        int ok = 0;
        for (int m = 0; m < members; ++m) {
            GenNum z = center + detail::random_below_monomial(rng, cert.exponent);
            bool member = gabs_ball_contains(center, cert.rho, z).truth == Decision::yes;
            bool inside = detail::sharp_below(gn_sharp_dist(z, center), r).truth == Decision::yes;
            ok += member && inside;
        }
        json row;
        row["i"] = i;
        row["direction"] = "sharp_to_gabs";
        row["center"] = center.to_string();
        row["input"] = r;
        row["q"] = cert.q;
        row["output"] = cert.rho.to_string();
        row["members"] = members;
        row["verified"] = ok;
        rep.rows.push_back(row);
        if (ok != members)
            detail::fail_row(rep, "sharp_to_gabs " + std::to_string(i) + ": " + std::to_string(ok) + " verified");
    }
    for (int i = 0; i < certificates; ++i) {
        GenNum center = random_gennum(rng);
        GenNum rho = detail::random_positive_invertible(rng);
        SharpCertificate cert = gabs_to_sharp(rho);
        int ok = 0;
        for (int m = 0; m < members; ++m) {
            GenNum z = center + detail::random_above(rng, cert.q + Rational(1));
            bool member = detail::sharp_below(gn_sharp_dist(z, center), cert.r).truth == Decision::yes;
            bool inside = gabs_ball_contains(center, rho, z).truth == Decision::yes;
            ok += member && inside;
        }
        json row;
        row["i"] = i;
        row["direction"] = "gabs_to_sharp";
        row["center"] = center.to_string();
        row["input"] = rho.to_string();
        row["q"] = to_string(cert.q);
        row["output"] = cert.r;
        row["members"] = members;
        row["verified"] = ok;
        rep.rows.push_back(row);
        if (ok != members)
            detail::fail_row(rep, "gabs_to_sharp " + std::to_string(i) + ": " + std::to_string(ok) + " verified");
    }
    rep.summary["certificates"] = 2 * certificates;
    rep.summary["members_per_certificate"] = members;
    rep.summary["seed"] = seed;
    return out;
}

struct FrFamily {
    std::string name;
    OpenSet1D domain;
    double lo, hi; ///< region for st X and st X + st H
    bool polynomial = false;
};

inline std::vector<FrFamily> fr_families()
{
    OpenSet1D sym = OpenSet1D::interval(Rational(-3), Rational(3));
    OpenSet1D log_dom = OpenSet1D::interval(Endpoint::at(Rational(-1)), Endpoint::plus_infinity());
    return {{"polynomial", sym, -2.5, 2.5, true}, {"sin(x)", sym, -2.5, 2.5},
            {"cos(x)", sym, -2.5, 2.5},            {"exp(x)", sym, -2.5, 2.5},
            {"log(1 + x)", log_dom, -0.5, 3.0},    {"1 / (1 + x^2)", sym, -2.5, 2.5}};
}

namespace detail {

inline Expr random_polynomial(Rng& rng)
{
    int deg = static_cast<int>(rng.integer(1, 6));
    Expr p = Expr::constant(std::round(rng.uniform(-2.0, 2.0) * 100.0) / 100.0);
    for (int i = 1; i <= deg; ++i) {
        double c = std::round(rng.uniform(-2.0, 2.0) * 100.0) / 100.0;
        if (c == 0.0)
            continue;
        Expr mono = i == 1 ? Expr::x() : pow(Expr::x(), Rational(i));
        p = p + Expr::constant(c) * mono;
    }
    return p;
}

} // namespace detail

/// Incremental ratio identity, r(X,0) = f'(X), division path and fixed-eps oracle
/// for each function family.
inline SuiteOutcome suite_fr(std::uint64_t seed, int per_family = 50, const Config& cfg = {})
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "incremental ratio corpus";
    rep.columns = {"family", "i", "f", "X", "H", "residual", "ratio_at_zero", "division_path",
                   "oracle_identity", "oracle_series", "passed"};
    Rng rng(seed);
    const std::vector<Rational> exps{Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                     Rational(5, 2), Rational(3)};
    long instances = 0, passed = 0;
    for (const auto& fam : fr_families()) {
        for (int i = 0; i < per_family; ++i) {
            GenFun f{fam.polynomial ? detail::random_polynomial(rng) : parse_expr(fam.name), fam.domain};
            double sx = rng.uniform(fam.lo, fam.hi);
            GenNum X = random_near_standard(rng, sx, exps, 2);
            int mode = static_cast<int>(rng.integer(0, 9));
            GenNum H;
            if (mode <= 3) {
                H = GenNum(random_infinitesimal(rng, exps));
            } else if (mode <= 8) {
                double sh = 0.0;
                while (std::abs(sh) < 0.05)
                    sh = rng.uniform(fam.lo, fam.hi) - sx;
                H = mode == 8 ? GenNum(sh) : random_near_standard(rng, sh, exps, 1);
            }
            json row;
            row["family"] = fam.name;
            row["i"] = i;
            row["f"] = f.expr.to_string();
            row["X"] = X.to_string();
            row["H"] = H.to_string();
            ++instances;
            try {
                VerdictReport v = verify_fr(f, X, H, cfg);
                bool ok = v.passed;
                for (const auto& r : v.rows) {
                    row[r["check"].get<std::string>()] = r["value"];
                    if (r["check"] == "oracle_series")
                        out.oracle_gap = std::max(out.oracle_gap, r["value"].get<double>());
                }
                if (fam.polynomial && row["ratio_at_zero"].get<double>() > coefficient_tolerance)
                    ok = false;
                GenNum fx = gf_eval_gen(f, X, cfg), fxh = gf_eval_gen(f, X + H, cfg);
                out.oracle_gap = std::max({out.oracle_gap, oracle_gap(f, X, fx), oracle_gap(f, X + H, fxh)});
                row["passed"] = ok;
                passed += ok;
                if (!ok)
                    detail::fail_row(rep, fam.name + " #" + std::to_string(i) + " failed: " + v.to_json().dump());
            } catch (const Error& e) {
                row["passed"] = false;
                detail::fail_row(rep, fam.name + " #" + std::to_string(i) + ": " + e.what());
            }
            rep.rows.push_back(row);
        }
    }
    rep.summary["instances"] = instances;
    rep.summary["passed"] = passed;
    rep.summary["oracle_gap"] = out.oracle_gap;
    rep.summary["seed"] = seed;
    return out;
}

struct TangentCase {
    std::string f;
    double lo, hi;
};

inline std::vector<TangentCase> tangent_corpus()
{
    return {{"sin(x)", -3, 3},           {"cos(x)", -3, 3},
            {"exp(x)", -2, 2},           {"log(x)", 0.5, 3},
            {"sqrt(x)", 0.5, 3},         {"x^3 - 2*x", -2, 2},
            {"1 / (1 + x^2)", -2, 2},    {"exp(sin(x))", -3, 3},
            {"x^(1/3)", 0.5, 3},         {"log(1 + x^2) * cos(x)", -2, 2}};
}

/// f(x + h) = f(x) + h f'(x) for first-order h over the Fermat reals.
inline SuiteOutcome suite_tangent(std::uint64_t seed, int samples = 100)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "tangent identity for first-order infinitesimals";
    rep.columns = {"i", "f", "x", "h", "lhs", "rhs", "equal"};
    Rng rng(seed);
    auto corpus = tangent_corpus();
    for (int i = 0; i < samples; ++i) {
        const TangentCase& c = corpus[static_cast<std::size_t>(i) % corpus.size()];
        Expr f = parse_expr(c.f);
        double x = rng.uniform(c.lo, c.hi);
        LittleOhPoly h = random_first_order(rng);
        LittleOhPoly lhs = fr_extend(f, LittleOhPoly(x) + h);
        double slope = eval_real(derivative(f, 1), 0.0, x);
        LittleOhPoly rhs = fr_extend(f, LittleOhPoly(x)) + slope * h;
        bool eq = lhs == rhs && fr_is_first_order(h) && (h * h).is_zero();
        json row;
        row["i"] = i;
        row["f"] = c.f;
        row["x"] = x;
        row["h"] = h.to_string();
        row["lhs"] = lhs.to_string();
        row["rhs"] = rhs.to_string();
        row["equal"] = eq;
        rep.rows.push_back(row);
        if (!eq)
            detail::fail_row(rep, "sample " + std::to_string(i) + ": " + lhs.to_string() + " vs " + rhs.to_string());
    }
    rep.summary["samples"] = samples;
    rep.summary["seed"] = seed;
    return out;
}

/// Points of a gabs ball around a point of a sharp sphere stay on the sphere.
inline SuiteOutcome suite_sphere(std::uint64_t seed, int samples = 100)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "openness of sharp spheres";
    rep.columns = {"i", "center", "m", "r", "y", "q", "z", "d_s", "on_sphere"};
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        GenNum center = random_gennum(rng);
        Rational m(rng.integer(-4, 10), 2);
        double r = std::exp(-to_double(m));
        std::vector<EpsSeries> offs;
        auto k = static_cast<std::size_t>(rng.integer(1, 2));
        for (std::size_t b = 0; b < k; ++b) {
            Rational lead = b == 0 ? m : m + Rational(rng.integer(0, 2), 2);
            offs.push_back(EpsSeries({{lead, random_coefficient(rng, true)},
                                      {lead + Rational(1), random_coefficient(rng, false)}}));
        }
        GenNum y = center + GenNum(std::move(offs));
        SphereWitness w = sphere_openness_witness(center, r, y);
        GenNum z = i % 10 == 0 ? y : y + detail::random_below_monomial(rng, w.q);
        SphereCheck chk = sphere_check(center, y, w, z);
        bool ok = chk.in_ball.truth == Decision::yes && chk.on_sphere;
        json row;
        row["i"] = i;
        row["center"] = center.to_string();
        row["m"] = to_string(m);
        row["r"] = r;
        row["y"] = y.to_string();
        row["q"] = to_string(w.q);
        row["z"] = z.to_string();
        row["d_s"] = gn_sharp_dist(z, center).value();
        row["on_sphere"] = ok;
        rep.rows.push_back(row);
        if (!ok)
            detail::fail_row(rep, "sample " + std::to_string(i) + " left the sphere");
    }
    rep.summary["samples"] = samples;
    rep.summary["seed"] = seed;
    return out;
}

struct ProbeCase {
    std::string f;
    std::string domain;
    bool zero;
};

inline std::vector<ProbeCase> probe_corpus()
{
    std::vector<ProbeCase> c;
    for (const char* f : {"x/eps", "x", "x^2", "sin(x)", "cos(x) - 1", "exp(x) - 1", "eps*x", "x^2 - eps",
                          "eps*sin(x/eps)", "exp(-1/eps) + x", "log(1 + x^2)", "sqrt(1 + x^2) - 1", "x^3 - x",
                          "1/(1 + x^2)", "x*exp(x)", "eps^2*x", "x - eps", "sin(x) - x", "(x - 1)^2"})
        c.push_back({f, "(-inf,inf)", false});
    c.push_back({"log(x)", "(0,inf)", false});
    c.push_back({"0", "(-inf,inf)", true});
    c.push_back({"exp(-1/eps)*x", "(-inf,inf)", true});
    return c;
}

/// Nonzero functions yield an invertible witness; zero and negligible ones exhaust the grid.
inline SuiteOutcome suite_probe(const Config& cfg = {})
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "invertible-point probe";
    rep.columns = {"f", "U", "expected", "result", "witness", "value_leading", "probes", "oracle_gap"};
    int found = 0, exhausted = 0;
    for (const auto& c : probe_corpus()) {
        GenFun u{parse_expr(c.f), parse_openset(c.domain)};
        ProbeResult res = gf_probe_nonzero(u, {}, cfg);
        json row;
        row["f"] = c.f;
        row["U"] = c.domain;
        row["expected"] = c.zero ? "Exhausted" : "witness";
        row["result"] = res.found ? "witness" : "Exhausted";
        row["probes"] = res.probes;
        bool ok = res.found != c.zero;
        if (res.found) {
            ++found;
            double gap = oracle_gap(u, res.witness, res.value);
            out.oracle_gap = std::max(out.oracle_gap, gap);
            row["witness"] = res.witness.to_string();
            row["value_leading"] = detail::leading_term(res.value);
            row["oracle_gap"] = gap;
            ok = ok && gn_invertible(res.witness).truth == Decision::yes && gn_is_near_standard(res.witness) &&
                 !res.value.is_zero();
        } else {
            ++exhausted;
        }
        rep.rows.push_back(row);
        if (!ok)
            detail::fail_row(rep, c.f + ": unexpected probe result");
    }
    rep.summary["witnesses"] = found;
    rep.summary["exhausted"] = exhausted;
    rep.summary["oracle_gap"] = out.oracle_gap;
    return out;
}

/// The generalized absolute value: gabs(x) = max(x,-x), gabs(x) >= 0, gabs(x) = 0 only
/// for x = 0, gabs(lx) = gabs(l) gabs(x), the triangle inequality and gabs(r) = |r|.
inline SuiteOutcome suite_gabs(std::uint64_t seed, int samples = 1000)
{
    SuiteOutcome out;
    VerdictReport& rep = out.report;
    rep.title = "generalized absolute value";
    rep.columns = {"property", "checked", "failures"};
    Rng rng(seed);
    long f[6] = {0, 0, 0, 0, 0, 0};
    long zero_cases = 0;
    for (int i = 0; i < samples; ++i) {
        GenNum x = rng.chance(0.05) ? GenNum(0.0) : random_gennum(rng);
        GenNum y = random_gennum(rng), l = random_gennum(rng);
        double r = rng.uniform(-10.0, 10.0);
        GenNum ax = gn_abs(x);
        if (!(ax == gn_min_max(AbsKind::max, x, -x)))
            ++f[0];
        if (gn_leq(GenNum(0.0), ax).truth != Decision::yes)
            ++f[1];
        if (gn_order_compare(ax, GenNum(0.0)).kind == CompareVerdict::EQ) {
            ++zero_cases;
            if (!x.is_zero())
                ++f[2];
        }
        if (!(gn_abs(l * x) == gn_abs(l) * ax))
            ++f[3];
        if (gn_leq(gn_abs(x + y), ax + gn_abs(y)).truth != Decision::yes)
            ++f[4];
        if (!(gn_abs(GenNum(r)) == GenNum(std::abs(r))))
            ++f[5];
    }
    const char* names[6] = {"gabs(x) = max(x,-x)", "gabs(x) >= 0", "gabs(x) = 0 implies x = 0",
                            "gabs(l x) = gabs(l) gabs(x)", "gabs(x+y) <= gabs(x) + gabs(y)",
                            "gabs(r) = |r| for real r"};
    for (int p = 0; p < 6; ++p) {
        json row;
        row["property"] = names[p];
        row["checked"] = p == 2 ? zero_cases : static_cast<long>(samples);
        row["failures"] = f[p];
        rep.rows.push_back(row);
        if (f[p])
            detail::fail_row(rep, std::string(names[p]) + ": " + std::to_string(f[p]) + " failures");
    }
    rep.summary["samples"] = samples;
    rep.summary["seed"] = seed;
    return out;
}

} // namespace cgn
