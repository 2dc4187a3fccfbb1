#pragma once

// Recursive-descent parsers for the literal grammars:
//   series    2 + 3*eps^(1/2) - eps^2 + O(eps^40)
//   gennum    series || series || ...
//   fermat    2 + 3*t^(1/2) - t
//   expr      eps*sin(x/eps) + x^(1/2)
//   openset   (-1,0) u (1/2,inf)

#include <cctype>
#include <charconv>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "fermat.hpp"
#include "gen_num.hpp"
#include "open_set.hpp"
#include "series.hpp"

namespace cgn {

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(std::string_view tok)
    {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok))
            fail("expected '" + std::string(tok) + "'");
    }

    void expect_end()
    {
        if (!at_end())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    std::size_t position() const { return pos_; }

    /// Identifier at the cursor without consuming it.
    std::string_view peek_identifier()
    {
        skip_ws();
        std::size_t e = pos_;
        while (e < s_.size() && std::isalpha(static_cast<unsigned char>(s_[e])))
            ++e;
        return s_.substr(pos_, e - pos_);
    }

    void advance(std::size_t n) { pos_ += n; }

    bool at_number()
    {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    /// Unsigned decimal literal (digits, optional fraction, optional exponent).
    std::string_view number_text()
    {
        skip_ws();
        std::size_t b = pos_, e = pos_;
        auto digits = [&] {
            while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e])))
                ++e;
        };
        digits();
        if (e < s_.size() && s_[e] == '.') {
            ++e;
            digits();
        }
        if (e == b || (e == b + 1 && s_[b] == '.'))
            fail("expected a number");
        if (e < s_.size() && (s_[e] == 'e' || s_[e] == 'E')) {
            std::size_t m = e + 1;
            if (m < s_.size() && (s_[m] == '+' || s_[m] == '-'))
                ++m;
            if (m < s_.size() && std::isdigit(static_cast<unsigned char>(s_[m]))) {
                e = m;
                digits();
            }
        }
        pos_ = e;
        return s_.substr(b, e - b);
    }

    double number()
    {
        std::size_t at = pos_;
        std::string_view t = number_text();
        double v = 0.0;
        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (res.ec != std::errc() || res.ptr != t.data() + t.size())
            throw ParseError("bad number '" + std::string(t) + "'", at);
        return v;
    }

    /// Exact rational value of an unsigned decimal literal.
    Rational exact_number()
    {
        std::size_t at = pos_;
        std::string_view t = number_text();
        std::int64_t num = 0, den = 1;
        int exp10 = 0;
        std::size_t i = 0;
        auto push = [&](char c) {
            if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
                throw ParseError("number too long for an exact rational", at);
            num = num * 10 + (c - '0');
        };
        for (; i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])); ++i)
            push(t[i]);
        if (i < t.size() && t[i] == '.') {
            for (++i; i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])); ++i) {
                push(t[i]);
                --exp10;
            }
        }
        if (i < t.size()) {
            int e = 0;
            std::from_chars(t.data() + i + 1 + (t[i + 1] == '+'), t.data() + t.size(), e);
            exp10 += e;
        }
        for (; exp10 > 0; --exp10) {
            if (num > std::numeric_limits<std::int64_t>::max() / 10)
                throw ParseError("number too large for an exact rational", at);
            num *= 10;
        }
        for (; exp10 < 0; ++exp10) {
            if (den > std::numeric_limits<std::int64_t>::max() / 10)
                throw ParseError("number too precise for an exact rational", at);
            den *= 10;
        }
        return Rational(num, den);
    }

    /// signed-rational := ['-'|'+'] number ['/' number]
    Rational signed_rational()
    {
        bool neg = accept("-");
        if (!neg)
            accept("+");
        Rational r = exact_number();
        if (accept("/")) {
            std::size_t at = pos_;
            Rational d = exact_number();
            if (d == Rational(0))
                throw ParseError("zero denominator", at);
            r /= d;
        }
        return neg ? -r : r;
    }

    /// exponent := integer | '-' integer | '(' signed-rational ')'
    Rational exponent()
    {
        if (accept("(")) {
            Rational r = signed_rational();
            expect(")");
            return r;
        }
        bool neg = accept("-");
        std::size_t at = pos_;
        Rational r = exact_number();
        if (!is_integer(r))
            throw ParseError("fractional exponents need parentheses", at);
        return neg ? -r : r;
    }

    /// coefficient := number | '(' number ['/' number] ')'
    double coefficient()
    {
        if (accept("(")) {
            bool neg = accept("-");
            double v = number();
            if (accept("/")) {
                std::size_t at = pos_;
                double d = number();
                if (d == 0.0)
                    throw ParseError("zero denominator", at);
                v /= d;
            }
            expect(")");
            return neg ? -v : v;
        }
        return number();
    }

    bool accept_word(std::string_view w)
    {
        if (peek_identifier() == w) {
            advance(w.size());
            return true;
        }
        return false;
    }

    Rational power_of(std::string_view var)
    {
        if (!accept_word(var))
            fail("expected '" + std::string(var) + "'");
        return accept("^") ? exponent() : Rational(1);
    }

    /// Signed sum of terms in `var`, with an optional O(var^q) tail when `allow_tail`.
    void series_terms(std::string_view var, bool allow_tail, std::vector<Term>& terms, Order& tail)
    {
        bool first = true;
        for (;;) {
            double sign = 1.0;
            if (accept("-"))
                sign = -1.0;
            else if (!accept("+") && !first)
                break;
            first = false;
            if (allow_tail && peek_identifier() == "O") {
                advance(1);
                expect("(");
                tail = min_order(tail, Order(power_of(var)));
                expect(")");
                continue;
            }
            if (peek_identifier() == var) {
                terms.push_back({power_of(var), sign});
                continue;
            }
            double c = coefficient();
            Rational e(0);
            if (accept("*"))
                e = power_of(var);
            terms.push_back({e, sign * c});
        }
    }

    EpsSeries series()
    {
        std::vector<Term> terms;
        Order tail = Order::infinity();
        series_terms("eps", true, terms, tail);
        return EpsSeries(std::move(terms), tail);
    }

    Expr expr()
    {
        Expr e = term();
        for (;;) {
            if (accept("+"))
                e = e + term();
            else if (accept("-"))
                e = e - term();
            else
                return e;
        }
    }

    Expr term()
    {
        Expr e = unary();
        for (;;) {
            if (accept("*"))
                e = e * unary();
            else if (accept("/"))
                e = e / unary();
            else
                return e;
        }
    }

    Expr unary()
    {
        if (accept("-"))
            return -unary();
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (accept("^"))
            return pow(base, exponent());
        return base;
    }

    Expr primary()
    {
        if (accept("(")) {
            Expr e = expr();
            expect(")");
            return e;
        }
        if (at_number())
            return Expr::constant(number());
        std::size_t at = pos_;
        std::string_view id = peek_identifier();
        if (id.empty())
            fail(at_end() ? "unexpected end of input" : "unexpected '" + std::string(1, peek()) + "'");
        advance(id.size());
        if (id == "x")
            return Expr::x();
        if (id == "eps")
            return Expr::eps();
        for (Fn f : {Fn::sin, Fn::cos, Fn::exp, Fn::log, Fn::sqrt}) {
            if (id == name(f)) {
                expect("(");
                Expr a = expr();
                expect(")");
                return apply(f, a);
            }
        }
        throw ParseError("unknown identifier '" + std::string(id) + "'", at);
    }

    Endpoint endpoint()
    {
        bool neg = accept("-");
        if (!neg)
            accept("+");
        if (accept_word("inf"))
            return neg ? Endpoint::minus_infinity() : Endpoint::plus_infinity();
        Rational r = exact_number();
        if (accept("/")) {
            std::size_t at = pos_;
            Rational d = exact_number();
            if (d == Rational(0))
                throw ParseError("zero denominator", at);
            r /= d;
        }
        return Endpoint::at(neg ? -r : r);
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline EpsSeries parse_series(std::string_view text)
{
    detail::Parser p(text);
    EpsSeries s = p.series();
    p.expect_end();
    return s;
}

inline GenNum parse_gennum(std::string_view text)
{
    detail::Parser p(text);
    std::vector<EpsSeries> branches{p.series()};
    while (p.accept("||"))
        branches.push_back(p.series());
    p.expect_end();
    return GenNum(std::move(branches));
}

inline LittleOhPoly parse_fermat(std::string_view text)
{
    detail::Parser p(text);
    std::vector<Term> terms;
    Order tail = Order::infinity();
    std::size_t at = p.position();
    p.series_terms("t", false, terms, tail);
    p.expect_end();
    for (const auto& t : terms)
        if (t.exponent < Rational(0))
            throw ParseError("negative exponent in a Fermat real", at);
    return fr_normalize(std::move(terms));
}

inline Expr parse_expr(std::string_view text)
{
    detail::Parser p(text);
    Expr e = p.expr();
    p.expect_end();
    return e;
}

inline OpenSet1D parse_openset(std::string_view text)
{
    detail::Parser p(text);
    std::vector<OpenInterval> parts;
    do {
        p.expect("(");
        Endpoint a = p.endpoint();
        p.expect(",");
        Endpoint b = p.endpoint();
        p.expect(")");
        parts.push_back({a, b});
    } while (p.accept_word("u"));
    p.expect_end();
    try {
        return OpenSet1D(std::move(parts));
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 0);
    }
}

/// Exact rational from a literal such as "3", "-0.25" or "1/3".
inline Rational parse_rational(std::string_view text)
{
    detail::Parser p(text);
    Rational r = p.signed_rational();
    p.expect_end();
    return r;
}

enum class LiteralKind { gennum, fermat, expr, openset };

using Literal = std::variant<GenNum, LittleOhPoly, Expr, OpenSet1D>;

inline Literal parse_literal(LiteralKind kind, std::string_view text)
{
    switch (kind) {
    case LiteralKind::gennum: return parse_gennum(text);
    case LiteralKind::fermat: return parse_fermat(text);
    case LiteralKind::expr: return parse_expr(text);
    case LiteralKind::openset: return parse_openset(text);
    }
    throw std::logic_error("parse_literal: bad kind");
}

} // namespace cgn
