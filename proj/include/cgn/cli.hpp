#pragma once

// Command-line front end. `run` takes the arguments after the program name and
// returns the exit code with the text destined for stdout and stderr.
//
// Exit codes: 0 success, 1 other failure, 2 parse error, 3 domain error
// (including NotNearStandard and NotInvertible), 4 tail-limited verdict.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgn.hpp"

namespace cgn::cli {

struct Result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

enum class Format { plain, json, csv };

namespace detail {

struct Options {
    std::string format = "plain";
    std::string q = "40";
    std::uint64_t seed = 20240601;
};

inline json config_json(const Config& cfg, std::uint64_t seed)
{
    json c;
    c["Q"] = order_json(Order(cfg.tail_order));
    c["tolerances"] = {{"coefficient", coefficient_tolerance},
                       {"witness", cfg.witness_threshold},
                       {"negligible", cfg.negligible_threshold},
                       {"quadrature", cfg.quadrature_tolerance},
                       {"fit_margin", cfg.fit_margin}};
    c["seed"] = seed;
    return c;
}

/// Output of one command before serialization.
struct Payload {
    json inputs = json::object();
    json result;
    std::string plain;
    std::optional<VerdictReport> report;
    std::vector<std::string> diagnostics;
    int exit_code = 0;
};

inline std::string decision_word(const Decision& d)
{
    return d.truth == Decision::yes ? "true" : d.truth == Decision::no ? "false" : to_string(d);
}

/// Moves the positional arguments of the subcommand behind "--" so that literals
/// such as -eps are not read as options. Every long option takes one value except
/// the listed flags.
inline std::vector<std::string> normalize_args(const std::vector<std::string>& args)
{
    static const std::vector<std::string> flags{"--sharp", "--fermat", "--omega", "--help", "--help-all"};
    auto is_flag = [&](const std::string& s) {
        return std::find(flags.begin(), flags.end(), s) != flags.end() || s.find('=') != std::string::npos;
    };
    std::vector<std::string> head, positional;
    std::size_t i = 0;
    bool in_sub = false;
    for (; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--") {
            positional.insert(positional.end(), args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.end());
            break;
        }
        if (a.rfind("--", 0) == 0) {
            head.push_back(a);
            if (!is_flag(a) && i + 1 < args.size())
                head.push_back(args[++i]);
        } else if (!in_sub) {
            head.push_back(a);
            in_sub = true;
        } else {
            positional.push_back(a);
        }
    }
    if (!positional.empty()) {
        head.push_back("--");
        head.insert(head.end(), positional.begin(), positional.end());
    }
    return head;
}

} // namespace detail

inline Result run(const std::vector<std::string>& args)
{
    using detail::Payload;
    Result res;
    detail::Options opt;

    CLI::App app{"Branched generalized numbers, Fermat reals and incremental ratios", "cgn"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    app.set_help_all_flag("--help-all");
    auto* fmt_opt = app.add_option("--format", opt.format, "json, csv or plain")
                        ->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_option("--Q", opt.q, "tail order (rational)");
    app.add_option("--seed", opt.seed, "seed for randomized demos");

    std::string a, b, f, U = "(-inf,inf)", x, h, name;
    std::optional<double> eps0;
    bool sharp = false, fermat = false, omega = false, fermat_lit = false;
    std::optional<std::string> min_with, max_with;
    int kmax = 100;

    auto* eval = app.add_subcommand("eval", "evaluate u at a near-standard point, or at (eps, x) when --eps is given");
    eval->add_option("--f", f, "expression in x and eps")->required();
    eval->add_option("--U", U, "open domain");
    eval->add_option("--x", x, "point")->required();
    eval->add_option("--eps", eps0, "fixed eps for representative evaluation");

    auto* dist = app.add_subcommand("dist", "sharp, Fermat or omega distance");
    auto* g = dist->add_option_group("metric");
    g->add_flag("--sharp", sharp);
    g->add_flag("--fermat", fermat);
    g->add_flag("--omega", omega);
    g->require_option(1);
    dist->add_option("a", a)->required();
    dist->add_option("b", b)->required();

    auto* val = app.add_subcommand("valuation", "valuation v(x)");
    val->add_option("x", a)->required();

    auto* absc = app.add_subcommand("abs", "generalized absolute value, or min/max with a second number");
    absc->add_option("x", a)->required();
    auto* mn = absc->add_option("--min", min_with);
    auto* mx = absc->add_option("--max", max_with);
    mn->excludes(mx);

    auto* ord = app.add_subcommand("order", "order comparison of x and y");
    ord->add_option("x", a)->required();
    ord->add_option("y", b)->required();

    auto* inv = app.add_subcommand("invert", "multiplicative inverse");
    inv->add_option("x", a)->required();

    auto* dec = app.add_subcommand("decompose", "standard part and infinitesimal part");
    dec->add_option("x", a)->required();
    dec->add_flag("--fermat", fermat_lit, "read x as a Fermat real in t");

    auto* fr = app.add_subcommand("fr", "incremental ratio r with f(x+h) = f(x) + h r(x,h)");
    fr->add_option("--f", f)->required();
    fr->add_option("--U", U);
    fr->add_option("--x", x)->required();
    fr->add_option("--h", h)->required();

    auto* th = app.add_subcommand("thicken", "is (x,h) in the thickening of U");
    th->add_option("--U", U)->required();
    th->add_option("--x", x)->required();
    th->add_option("--h", h)->required();

    auto* pr = app.add_subcommand("probe", "search invertible near-standard points for a nonzero value");
    pr->add_option("--f", f)->required();
    pr->add_option("--U", U);

    auto* demo = app.add_subcommand("demo", "tabulated demonstration suites");
    demo->add_option("name", name, "conv-ex, discreteness, sphere, ball-convert, fr-corpus, probe-demo")
        ->required()
        ->check(CLI::IsMember({"conv-ex", "discreteness", "sphere", "ball-convert", "fr-corpus", "probe-demo"}));
    demo->add_option("--kmax", kmax, "largest index for conv-ex");

    std::vector<std::string> norm = detail::normalize_args(args);
    std::vector<std::string> rev(norm.rbegin(), norm.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        res.out = app.help();
        return res;
    } catch (const CLI::CallForAllHelp&) {
        res.out = app.help("", CLI::AppFormatMode::All);
        return res;
    } catch (const CLI::ParseError& e) {
        res.exit_code = 2;
        res.err = e.what() + std::string("\n");
        return res;
    }

    Config cfg;
    std::string command = app.get_subcommands().front()->get_name();
    Format format = opt.format == "json" ? Format::json : opt.format == "csv" ? Format::csv : Format::plain;
    if (command == "demo" && fmt_opt->count() == 0)
        format = Format::csv;

    Payload p;
    try {
        Rational q = parse_rational(opt.q);
        if (!(q > Rational(0)))
            throw ParseError("--Q must be positive", 0);
        cfg.tail_order = q;

        if (command == "eval") {
            GenFun u{parse_expr(f), parse_openset(U)};
            p.inputs = {{"f", f}, {"U", U}, {"x", x}};
            if (eps0) {
                double x0 = parse_gennum(x).evaluate(0);
                GenNum xr = parse_gennum(x);
                if (!xr.is_exact() || xr.branch_count() != 1 || !(xr.branch(0).terms().empty() ||
                                                                  (xr.branch(0).terms().size() == 1 &&
                                                                   xr.branch(0).leading().exponent == Rational(0))))
                    throw DomainError("with --eps the point must be a real number");
                p.inputs["eps"] = *eps0;
                double v = gf_eval_real(u, *eps0, x0);
                p.result = v;
                p.plain = cgn::detail::shortest(v);
            } else {
                GenNum X = parse_gennum(x);
                GenNum v = gf_eval_gen(u, X, cfg);
                double gap = oracle_gap(u, X, v);
                p.result = {{"value", v.to_string()}, {"oracle_gap", gap}};
                p.plain = v.to_string();
            }
        } else if (command == "dist") {
            GenNum A = parse_gennum(a), B = parse_gennum(b);
            std::string kind = sharp ? "sharp" : fermat ? "fermat" : "omega";
            p.inputs = {{"metric", kind}, {"a", a}, {"b", b}};
            double d = 0.0;
            if (sharp) {
                SharpDistance s = gn_sharp_dist(A, B);
                if (!s.exact()) {
                    p.result = {{"lower", s.lower}, {"upper", s.upper}};
                    p.plain = "[" + cgn::detail::shortest(s.lower) + ", " + cgn::detail::shortest(s.upper) + "]";
                    p.diagnostics.push_back("valuation hidden behind O(eps^" + to_string(s.valuation.lower) + ")");
                    p.exit_code = 4;
                    goto emit;
                }
                d = s.value();
            } else {
                d = gn_metric(fermat ? MetricKind::fermat : MetricKind::omega, A, B);
            }
            p.result = d;
            p.plain = cgn::detail::shortest(d);
        } else if (command == "valuation") {
            Valuation v = gn_valuation(parse_gennum(a));
            p.inputs = {{"x", a}};
            if (v.exact()) {
                p.result = order_json(v.lower);
                p.plain = to_string(v.lower);
            } else {
                p.result = {{"lower_bound", order_json(v.lower)}};
                p.plain = ">= " + to_string(v.lower);
                p.diagnostics.push_back("valuation hidden behind O(eps^" + to_string(v.lower) + ")");
                p.exit_code = 4;
            }
        } else if (command == "abs") {
            GenNum X = parse_gennum(a);
            p.inputs = {{"x", a}};
            GenNum r;
            if (min_with) {
                p.inputs["min"] = *min_with;
                r = gn_min_max(AbsKind::min, X, parse_gennum(*min_with));
            } else if (max_with) {
                p.inputs["max"] = *max_with;
                r = gn_min_max(AbsKind::max, X, parse_gennum(*max_with));
            } else {
                r = gn_abs(X);
            }
            p.result = r.to_string();
            p.plain = r.to_string();
        } else if (command == "order") {
            CompareVerdict v = gn_order_compare(parse_gennum(a), parse_gennum(b));
            p.inputs = {{"x", a}, {"y", b}};
            p.result = to_string(v);
            p.plain = to_string(v);
            if (v.kind == CompareVerdict::UNKNOWN) {
                p.diagnostics.push_back("order undecided: difference hidden behind O(eps^" + to_string(v.order) + ")");
                p.exit_code = 4;
            }
        } else if (command == "invert") {
            GenNum r = gn_invert(parse_gennum(a), cfg);
            p.inputs = {{"x", a}};
            p.result = r.to_string();
            p.plain = r.to_string();
        } else if (command == "decompose") {
            p.inputs = {{"x", a}, {"kind", fermat_lit ? "fermat" : "gennum"}};
            if (fermat_lit) {
                auto [s, d] = fr_decompose(parse_fermat(a));
                p.result = {{"standard", s}, {"infinitesimal", d.to_string()}};
                p.plain = cgn::detail::shortest(s) + "\n" + d.to_string();
            } else {
                NearStandard ns = gn_near_standard_decompose(parse_gennum(a));
                p.result = {{"standard", ns.standard}, {"infinitesimal", ns.delta.to_string()}};
                p.plain = cgn::detail::shortest(ns.standard) + "\n" + ns.delta.to_string();
            }
        } else if (command == "fr") {
            GenFun u{parse_expr(f), parse_openset(U)};
            GenNum X = parse_gennum(x), H = parse_gennum(h);
            p.inputs = {{"f", f}, {"U", U}, {"x", x}, {"h", h}};
            VerdictReport rep = verify_fr(u, X, H, cfg);
            std::string ratio = rep.summary["ratio"].get<std::string>();
            p.result = {{"ratio", ratio}, {"verified", rep.passed}, {"checks", rep.rows}};
            p.plain = ratio + "\n" + (rep.passed ? "verified" : "verification failed");
            p.diagnostics = rep.diagnostics;
            p.report = rep;
            if (!rep.passed)
                p.exit_code = 1;
        } else if (command == "thicken") {
            OpenSet1D dom = parse_openset(U);
            ThickeningVerdict v = near_std_thickening(dom, parse_gennum(x), parse_gennum(h));
            p.inputs = {{"U", U}, {"x", x}, {"h", h}};
            p.result = {{"contained", v.contained}};
            p.plain = v.contained ? "true" : "false";
            if (v.contained) {
                p.result["a"] = std::isfinite(v.a) ? json(v.a) : json("inf");
                p.plain += "\na = " + cgn::detail::shortest(v.a);
            }
        } else if (command == "probe") {
            GenFun u{parse_expr(f), parse_openset(U)};
            p.inputs = {{"f", f}, {"U", U}};
            ProbeResult r = gf_probe_nonzero(u, {}, cfg);
            if (r.found) {
                p.result = {{"witness", r.witness.to_string()}, {"value", r.value.to_string()}, {"probes", r.probes}};
                p.plain = "witness " + r.witness.to_string() + "\nvalue " + r.value.to_string();
            } else {
                p.result = {{"witness", nullptr}, {"probes", r.probes}};
                p.plain = "Exhausted";
            }
        } else if (command == "demo") {
            p.inputs = {{"name", name}};
            SuiteOutcome s;
            if (name == "conv-ex") {
                p.inputs["kmax"] = kmax;
                s = suite_conv_ex(kmax);
            } else if (name == "discreteness") {
                s = suite_discreteness(opt.seed);
            } else if (name == "sphere") {
                s = suite_sphere(opt.seed);
            } else if (name == "ball-convert") {
                s = suite_ball_convert(opt.seed);
            } else if (name == "fr-corpus") {
                s = suite_fr(opt.seed, 50, cfg);
            } else {
                s = suite_probe(cfg);
            }
            p.report = s.report;
            p.result = s.report.to_json();
            p.plain = s.report.to_csv();
            p.diagnostics = s.report.diagnostics;
            if (!s.report.passed)
                p.exit_code = 1;
        }
    } catch (const ParseError& e) {
        p.exit_code = 2;
        p.diagnostics.push_back(e.what());
    } catch (const DomainError& e) {
        p.exit_code = 3;
        p.diagnostics.push_back(e.what());
    } catch (const UnknownSign& e) {
        p.exit_code = 4;
        p.diagnostics.push_back(e.what());
    } catch (const std::exception& e) {
        p.exit_code = 1;
        p.diagnostics.push_back(e.what());
    }

emit:
    res.exit_code = p.exit_code;
    for (const auto& d : p.diagnostics)
        res.err += d + "\n";
    if (format == Format::json) {
        json j;
        j["command"] = command;
        j["config"] = detail::config_json(cfg, opt.seed);
        j["inputs"] = p.inputs;
        j["result"] = p.result;
        j["diagnostics"] = p.diagnostics;
        res.out = j.dump(2) + "\n";
    } else if (p.result.is_null() && p.plain.empty()) {
        // failure before a result: message on stderr only
    } else if (format == Format::csv) {
        if (p.report) {
            res.out = p.report->to_csv();
        } else {
            res.out = "result\n" + VerdictReport::csv_cell(p.result.is_primitive() ? p.result : json(p.plain)) + "\n";
        }
    } else {
        res.out = p.plain + (p.plain.empty() || p.plain.back() == '\n' ? "" : "\n");
    }
    return res;
}

} // namespace cgn::cli
